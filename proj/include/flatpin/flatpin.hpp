#ifndef FLATPIN_FLATPIN_HPP
#define FLATPIN_FLATPIN_HPP

#include "flatpin/error.hpp"
#include "flatpin/root_two_dyadic.hpp"
#include "flatpin/dyadic.hpp"
#include "flatpin/signed_permutation.hpp"
#include "flatpin/clifford.hpp"
#include "flatpin/integer_matrix.hpp"
#include "flatpin/bieberbach.hpp"
#include "flatpin/gf2.hpp"
#include "flatpin/pinspin.hpp"
#include "flatpin/invariants.hpp"
#include "flatpin/catalog.hpp"
#include "flatpin/group_file.hpp"
#include "flatpin/report.hpp"
#include "flatpin/reproduce.hpp"

#endif  // FLATPIN_FLATPIN_HPP
