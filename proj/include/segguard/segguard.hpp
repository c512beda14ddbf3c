#pragma once

#include "segguard/bounds.hpp"
#include "segguard/classify.hpp"
#include "segguard/constructions.hpp"
#include "segguard/extreme.hpp"
#include "segguard/figures.hpp"
#include "segguard/json_io.hpp"
#include "segguard/lp.hpp"
#include "segguard/market.hpp"
#include "segguard/oracle.hpp"
#include "segguard/rational.hpp"
#include "segguard/segmentation.hpp"
