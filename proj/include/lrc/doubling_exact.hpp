#pragma once

#include <optional>

#include "lrc/fourier.hpp"

namespace lrc {

// Closed-form control for the doubling map x -> 2x mod 1, where rho = 1 and
// the transfer operator sends mode 2n to mode n and kills odd modes.
//
// For a zero-mean target with coefficients a_n the distinguished solution
// has coefficient (a_{2n} - a_n) / (2 pi i n) at frequency 2n and nothing on
// odd frequencies; it minimizes every diagonal Sobolev norm. Optional odd
// content c_m (m odd) adds the free term c_m / (pi i m) at frequency m.
// Throws InvalidArgument on a nonzero-mean target or on odd_modes carrying
// even-mode content.
FourierSeries exact_control(const FourierSeries& target,
                            const std::optional<FourierSeries>& odd_modes = {});

// Density response of the doubling map to a perturbation epsilon: the
// Neumann series of the halving rule applied to b = -epsilon'/2.
FourierSeries exact_forward(const FourierSeries& epsilon);

}  // namespace lrc
