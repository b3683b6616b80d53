#pragma once

#include "limcov/binary_word.hpp"
#include "limcov/cylinder_set.hpp"
#include "limcov/delta_schedule.hpp"
#include "limcov/error.hpp"
#include "limcov/fatou.hpp"
#include "limcov/generate.hpp"
#include "limcov/measurecover.hpp"
#include "limcov/omega.hpp"
#include "limcov/opencover.hpp"
#include "limcov/oracle.hpp"
#include "limcov/randlab.hpp"
#include "limcov/rational.hpp"
#include "limcov/real_interval.hpp"
#include "limcov/report.hpp"
#include "limcov/semimeasure.hpp"
#include "limcov/setcover.hpp"
#include "limcov/step_function.hpp"
#include "limcov/trace.hpp"
#include "limcov/verify.hpp"
