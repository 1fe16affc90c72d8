#pragma once

#include "mmerge/errors.hpp"
#include "mmerge/formula.hpp"
#include "mmerge/parser.hpp"
#include "mmerge/truth_table.hpp"
#include "mmerge/universe.hpp"
#include "mmerge/semantics.hpp"
#include "mmerge/profile.hpp"
#include "mmerge/transforms.hpp"
#include "mmerge/substitution.hpp"
#include "mmerge/similarity.hpp"
#include "mmerge/merge.hpp"
#include "mmerge/dalal.hpp"
#include "mmerge/scenario.hpp"
#include "mmerge/problem_file.hpp"
