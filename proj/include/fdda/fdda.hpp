// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FDDA_FDDA_HPP
#define FDDA_FDDA_HPP

#include "fdda/accuracy.hpp"
#include "fdda/error.hpp"
#include "fdda/frames.hpp"
#include "fdda/generators.hpp"
#include "fdda/node.hpp"
#include "fdda/report_format.hpp"
#include "fdda/scenario_file.hpp"
#include "fdda/simulation.hpp"
#include "fdda/topology.hpp"

#endif // FDDA_FDDA_HPP
