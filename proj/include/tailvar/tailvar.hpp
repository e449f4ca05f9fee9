// Copyright (c) 2026 tailvar contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "tailvar/calibration.hpp"
#include "tailvar/comparison.hpp"
#include "tailvar/correction_model.hpp"
#include "tailvar/loss_models.hpp"
#include "tailvar/mc_oracle.hpp"
#include "tailvar/quantile_approx.hpp"
#include "tailvar/special_functions.hpp"
#include "tailvar/text_format.hpp"
