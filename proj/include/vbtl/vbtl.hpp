#pragma once

#include "vbtl/error.hpp"
#include "vbtl/grid.hpp"
#include "vbtl/csv_io.hpp"
#include "vbtl/random.hpp"
#include "vbtl/exponents.hpp"
#include "vbtl/variable_lebesgue.hpp"
#include "vbtl/filter_bank.hpp"
#include "vbtl/peetre.hpp"
#include "vbtl/local_means.hpp"
#include "vbtl/differences.hpp"
#include "vbtl/expression.hpp"
#include "vbtl/families.hpp"
#include "vbtl/inequalities.hpp"
#include "vbtl/equivalence.hpp"
#include "vbtl/report_io.hpp"
