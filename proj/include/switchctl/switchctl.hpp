#pragma once

#include "switchctl/demo.hpp"
#include "switchctl/factorize.hpp"
#include "switchctl/io.hpp"
#include "switchctl/lie.hpp"
#include "switchctl/network.hpp"
#include "switchctl/pipeline.hpp"
#include "switchctl/schedule.hpp"
#include "switchctl/simulate.hpp"
#include "switchctl/targets.hpp"
