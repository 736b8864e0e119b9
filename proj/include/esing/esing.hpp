#pragma once

#include "esing/desing.hpp"
#include "esing/diffop.hpp"
#include "esing/diffsys.hpp"
#include "esing/efunc.hpp"
#include "esing/matrix.hpp"
#include "esing/poly.hpp"
#include "esing/rat.hpp"
#include "esing/ratfun.hpp"
#include "esing/relations.hpp"
#include "esing/roots.hpp"
#include "esing/series.hpp"
#include "esing/smith.hpp"
