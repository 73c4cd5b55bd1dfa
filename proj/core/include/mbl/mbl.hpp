#pragma once

#include "mbl/classify.hpp"
#include "mbl/errors.hpp"
#include "mbl/experiments.hpp"
#include "mbl/export.hpp"
#include "mbl/flux.hpp"
#include "mbl/manifest.hpp"
#include "mbl/operators.hpp"
#include "mbl/scheme2.hpp"
#include "mbl/scheme3.hpp"
#include "mbl/theory.hpp"
#include "mbl/version.hpp"
