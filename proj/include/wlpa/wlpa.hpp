#pragma once

#include "wlpa/algebra.hpp"
#include "wlpa/enumerate.hpp"
#include "wlpa/error.hpp"
#include "wlpa/expression.hpp"
#include "wlpa/field.hpp"
#include "wlpa/graph.hpp"
#include "wlpa/lpa.hpp"
#include "wlpa/unweighting.hpp"
#include "wlpa/word.hpp"
