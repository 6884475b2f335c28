#pragma once

#include "lvs/compare.hpp"
#include "lvs/error.hpp"
#include "lvs/integrate.hpp"
#include "lvs/model.hpp"
#include "lvs/model_json.hpp"
#include "lvs/pade.hpp"
#include "lvs/roots.hpp"
#include "lvs/scalar.hpp"
#include "lvs/series.hpp"
#include "lvs/taylor.hpp"
#include "lvs/vim.hpp"
