#pragma once

#include "intermap/common.hpp"

namespace intermap {

/// Unitary discrete Fourier kernel <p|q> = exp(+2i*pi*p*q/N)/sqrt(N),
/// applied in O(N log N). fourier_to_momentum is W (q -> p),
/// fourier_to_position is W^dag (p -> q). Thread-safe; plans are cached
/// per transform size behind a mutex, execution runs concurrently.
StateVector fourier_to_momentum(const StateVector& position_amplitudes);
StateVector fourier_to_position(const StateVector& momentum_amplitudes);

}  // namespace intermap
