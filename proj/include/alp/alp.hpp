#pragma once

#include "alp/grid.hpp"
#include "alp/field.hpp"
#include "alp/transform.hpp"
#include "alp/operators.hpp"
#include "alp/filter_bank.hpp"
#include "alp/localization.hpp"
#include "alp/norms.hpp"
#include "alp/ensemble.hpp"
#include "alp/paraproduct.hpp"
#include "alp/inequalities.hpp"
#include "alp/rotation.hpp"
#include "alp/solver.hpp"
#include "alp/initial_data.hpp"
#include "alp/snapshot.hpp"
#include "alp/experiments.hpp"
