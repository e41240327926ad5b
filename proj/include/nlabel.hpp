#pragma once

#include "nlabel/build.hpp"
#include "nlabel/canonical_json.hpp"
#include "nlabel/column_kind.hpp"
#include "nlabel/error.hpp"
#include "nlabel/ground_truth.hpp"
#include "nlabel/label.hpp"
#include "nlabel/maker.hpp"
#include "nlabel/pair_plots.hpp"
#include "nlabel/philox.hpp"
#include "nlabel/prob_model.hpp"
#include "nlabel/render.hpp"
#include "nlabel/stats.hpp"
#include "nlabel/table.hpp"
#include "nlabel/text.hpp"
#include "nlabel/validate.hpp"
