#pragma once

#include "subalc/bitset.hpp"
#include "subalc/boolfun.hpp"
#include "subalc/classify.hpp"
#include "subalc/error.hpp"
#include "subalc/generate.hpp"
#include "subalc/qbf.hpp"
#include "subalc/reductions.hpp"
#include "subalc/semantics.hpp"
#include "subalc/syntax.hpp"
#include "subalc/tableau.hpp"
#include "subalc/verify.hpp"
