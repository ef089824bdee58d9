#pragma once

#include "qpunct/code_io.hpp"
#include "qpunct/distance.hpp"
#include "qpunct/errors.hpp"
#include "qpunct/experiment.hpp"
#include "qpunct/gfp.hpp"
#include "qpunct/griesmer.hpp"
#include "qpunct/puncture.hpp"
#include "qpunct/search.hpp"
#include "qpunct/stabcode.hpp"
#include "qpunct/symplectic.hpp"
