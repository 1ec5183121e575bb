#pragma once

#include "kahler/berger.hpp"
#include "kahler/branch.hpp"
#include "kahler/branch_file.hpp"
#include "kahler/differentials.hpp"
#include "kahler/echelon.hpp"
#include "kahler/error.hpp"
#include "kahler/ideals.hpp"
#include "kahler/poly_parser.hpp"
#include "kahler/rational.hpp"
#include "kahler/report.hpp"
#include "kahler/semigroup.hpp"
#include "kahler/series.hpp"
