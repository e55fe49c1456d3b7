#pragma once

#include "hup/errors.hpp"
#include "hup/grid.hpp"
#include "hup/hilbert.hpp"
#include "hup/interval_maps.hpp"
#include "hup/kg_fourier.hpp"
#include "hup/oscillatory.hpp"
#include "hup/pv.hpp"
#include "hup/quadrature.hpp"
#include "hup/special.hpp"
#include "hup/transfer_ops.hpp"
#include "hup/verification.hpp"
