#pragma once

#include "diffnet/adoption.hpp"
#include "diffnet/document.hpp"
#include "diffnet/dot.hpp"
#include "diffnet/enumeration.hpp"
#include "diffnet/fixtures.hpp"
#include "diffnet/generators.hpp"
#include "diffnet/network.hpp"
#include "diffnet/rational.hpp"
#include "diffnet/reduction.hpp"
#include "diffnet/saturation.hpp"
#include "diffnet/structure.hpp"
