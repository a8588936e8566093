#pragma once

#include "subm/colorings.hpp"
#include "subm/families.hpp"
#include "subm/finset.hpp"
#include "subm/ideals.hpp"
#include "subm/json_io.hpp"
#include "subm/measure.hpp"
#include "subm/pathology.hpp"
#include "subm/rational.hpp"
#include "subm/schemes.hpp"
#include "subm/selectors.hpp"
#include "subm/simplex.hpp"
#include "subm/spec.hpp"
#include "subm/stream.hpp"
#include "subm/vectorseq.hpp"
