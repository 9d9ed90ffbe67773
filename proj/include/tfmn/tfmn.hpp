#pragma once

#include "tfmn/analysis.hpp"
#include "tfmn/conllu.hpp"
#include "tfmn/emotion.hpp"
#include "tfmn/error.hpp"
#include "tfmn/heuristic_parser.hpp"
#include "tfmn/ingest.hpp"
#include "tfmn/lexicons.hpp"
#include "tfmn/metrics.hpp"
#include "tfmn/network.hpp"
#include "tfmn/numeric.hpp"
#include "tfmn/pipeline.hpp"
#include "tfmn/porter.hpp"
#include "tfmn/serialize.hpp"
#include "tfmn/stats.hpp"
#include "tfmn/wordlists.hpp"
