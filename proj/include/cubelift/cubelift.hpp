#pragma once

/// \file cubelift.hpp
/// Convenience umbrella for the whole library: UBQP instances, the
/// cube-lifting reduction to a structured LP, the exact simplex solver,
/// the brute-force oracle, and the verification campaign.

#include "campaign.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "layout.hpp"
#include "lift.hpp"
#include "lpsolve.hpp"
#include "oracle.hpp"
#include "rational.hpp"
#include "reduction.hpp"
