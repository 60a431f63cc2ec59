#pragma once

#include "ucactus/error.hpp"
#include "ucactus/graph.hpp"
#include "ucactus/plf.hpp"
#include "ucactus/uncertain.hpp"
#include "ucactus/reduction.hpp"
#include "ucactus/decision.hpp"
#include "ucactus/optimizer.hpp"
#include "ucactus/oracle.hpp"
#include "ucactus/io.hpp"
