#pragma once

#include "fibcf/exactnum.hpp"
#include "fibcf/fibword.hpp"
#include "fibcf/logexp.hpp"
#include "fibcf/construct.hpp"
#include "fibcf/parallel.hpp"
#include "fibcf/verify.hpp"
#include "fibcf/roots.hpp"
#include "fibcf/dioph.hpp"
