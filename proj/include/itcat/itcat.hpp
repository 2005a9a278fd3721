#pragma once

#include "itcat/error.hpp"
#include "itcat/rational.hpp"
#include "itcat/space.hpp"
#include "itcat/monads.hpp"
#include "itcat/kleisli.hpp"
#include "itcat/sampling.hpp"
#include "itcat/laws.hpp"
#include "itcat/informativeness.hpp"
#include "itcat/bayes.hpp"
#include "itcat/linear.hpp"
#include "itcat/itfile.hpp"
