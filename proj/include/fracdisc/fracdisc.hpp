// SPDX-License-Identifier: Apache-2.0
#ifndef FRACDISC_FRACDISC_HPP
#define FRACDISC_FRACDISC_HPP

#include "fracdisc/conditions.hpp"
#include "fracdisc/corpus.hpp"
#include "fracdisc/fracops.hpp"
#include "fracdisc/io.hpp"
#include "fracdisc/realline.hpp"
#include "fracdisc/series.hpp"
#include "fracdisc/solver.hpp"
#include "fracdisc/specfun.hpp"

#endif  // FRACDISC_FRACDISC_HPP
