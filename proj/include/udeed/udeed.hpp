#pragma once

#include "udeed/core.hpp"
#include "udeed/data.hpp"
#include "udeed/diversity.hpp"
#include "udeed/eval.hpp"
#include "udeed/io.hpp"
#include "udeed/logistic.hpp"
#include "udeed/objective.hpp"
#include "udeed/predict.hpp"
#include "udeed/random.hpp"
#include "udeed/stats.hpp"
#include "udeed/train.hpp"
