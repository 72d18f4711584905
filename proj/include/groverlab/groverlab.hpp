// groverlab.hpp — umbrella header.

#pragma once

#include "groverlab/boolean_net.hpp"
#include "groverlab/density.hpp"
#include "groverlab/epr.hpp"
#include "groverlab/grover.hpp"
#include "groverlab/histories.hpp"
#include "groverlab/layout.hpp"
#include "groverlab/measure.hpp"
#include "groverlab/report.hpp"
#include "groverlab/state.hpp"
