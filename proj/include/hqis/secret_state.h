// Copyright 2026 The HQIS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HQIS_SECRET_STATE_H
#define HQIS_SECRET_STATE_H

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace hqis {

using Complex = std::complex<double>;

/// The single-qubit state alpha|0> + beta|1> that the boss distributes.
class SecretState {
   public:
    static constexpr double kNormTolerance = 1e-10;

    SecretState(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
        double norm2 = std::norm(alpha) + std::norm(beta);
        if (std::abs(norm2 - 1.0) > kNormTolerance) {
            throw std::invalid_argument(
                "secret state is not normalized: |alpha|^2 + |beta|^2 = " + std::to_string(norm2));
        }
    }

    /// Scales (alpha, beta) to unit norm. Rejects the zero vector.
    static SecretState normalized(Complex alpha, Complex beta) {
        double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
        if (!(norm > 0)) {
            throw std::invalid_argument("secret state has zero norm");
        }
        return SecretState(alpha / norm, beta / norm);
    }

    Complex alpha() const {
        return alpha_;
    }
    Complex beta() const {
        return beta_;
    }

   private:
    Complex alpha_;
    Complex beta_;
};

namespace secrets {

inline SecretState zero() {
    return {1.0, 0.0};
}
inline SecretState one() {
    return {0.0, 1.0};
}
inline SecretState plus() {
    return {M_SQRT1_2, M_SQRT1_2};
}

}  // namespace secrets

}  // namespace hqis

#endif
