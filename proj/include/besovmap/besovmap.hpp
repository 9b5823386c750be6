#ifndef BESOVMAP_BESOVMAP_HPP
#define BESOVMAP_BESOVMAP_HPP

#include "besovmap/besov.hpp"
#include "besovmap/errors.hpp"
#include "besovmap/io.hpp"
#include "besovmap/mapping.hpp"
#include "besovmap/rng.hpp"
#include "besovmap/runner.hpp"
#include "besovmap/space.hpp"

#endif  // BESOVMAP_BESOVMAP_HPP
