#pragma once

#include "cqhc/analysis.hpp"
#include "cqhc/concat.hpp"
#include "cqhc/decoder.hpp"
#include "cqhc/flip_cost.hpp"
#include "cqhc/gf2.hpp"
#include "cqhc/oracle.hpp"
#include "cqhc/qhc.hpp"
#include "cqhc/readout.hpp"
#include "cqhc/session.hpp"
#include "cqhc/sim.hpp"
#include "cqhc/verify.hpp"
#include "cqhc/version.hpp"
#include "cqhc/vignettes.hpp"
