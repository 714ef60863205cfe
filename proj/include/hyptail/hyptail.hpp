#ifndef HYPTAIL_HYPTAIL_HPP
#define HYPTAIL_HYPTAIL_HPP

#include "hyptail/binom.hpp"
#include "hyptail/bound_check.hpp"
#include "hyptail/bounds.hpp"
#include "hyptail/certify.hpp"
#include "hyptail/dist.hpp"
#include "hyptail/expr.hpp"
#include "hyptail/hyp.hpp"
#include "hyptail/interval.hpp"
#include "hyptail/orders.hpp"
#include "hyptail/rational.hpp"
#include "hyptail/report.hpp"
#include "hyptail/sweep.hpp"

#endif  // HYPTAIL_HYPTAIL_HPP
