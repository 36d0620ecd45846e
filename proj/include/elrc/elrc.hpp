#pragma once

#include "elrc/analysis.hpp"
#include "elrc/code.hpp"
#include "elrc/combinations.hpp"
#include "elrc/error.hpp"
#include "elrc/gf2.hpp"
#include "elrc/repair.hpp"
#include "elrc/text_format.hpp"
