// Copyright 2026 The qsl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "qsl/states.hpp"

using namespace qsl;
using Catch::Matchers::WithinAbs;

TEST_CASE("validated accepts the maximally mixed state", "[states]") {
  const DensityMatrix rho = DensityMatrix::validated(ComplexMatrix::Identity(2, 2) * 0.5);
  REQUIRE(rho.dim() == 2);
  REQUIRE_THAT(purity(rho), WithinAbs(0.5, 1e-14));
}

TEST_CASE("validated rejects non-Hermitian matrices", "[states]") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2) * 0.5;
  m(0, 1) = Complex(0.1, 0.0);
  REQUIRE_THROWS_AS(DensityMatrix::validated(m), NotHermitian);
}

TEST_CASE("validated rejects trace deviation", "[states]") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.6;
  m(1, 1) = 0.6;
  try {
    DensityMatrix::validated(m);
    FAIL("expected TraceDeviation");
  } catch (const TraceDeviation& e) {
    REQUIRE_THAT(e.measured(), WithinAbs(0.2, 1e-12));
  }
}

TEST_CASE("validated rejects indefinite matrices", "[states]") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  REQUIRE_THROWS_AS(DensityMatrix::validated(m), NotPSD);
}

TEST_CASE("validated tolerance boundary", "[states]") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2) * 0.5;
  m(0, 1) = Complex(0.0, 5e-10);
  REQUIRE_NOTHROW(DensityMatrix::validated(m, 1e-8));
  REQUIRE_THROWS_AS(DensityMatrix::validated(m, 1e-10), NotHermitian);
}

TEST_CASE("density_from_pure builds the projector", "[states]") {
  ComplexVector amps(2);
  amps << Complex(1.0 / std::sqrt(2.0), 0.0), Complex(1.0 / std::sqrt(2.0), 0.0);
  const DensityMatrix rho = density_from_pure(PureState::validated(amps));
  REQUIRE_THAT(rho.mat()(0, 0).real(), WithinAbs(0.5, 1e-14));
  REQUIRE_THAT(rho.mat()(0, 1).real(), WithinAbs(0.5, 1e-14));
  REQUIRE_THAT(purity(rho), WithinAbs(1.0, 1e-14));
}

TEST_CASE("PureState rejects unnormalized amplitudes", "[states]") {
  ComplexVector amps(2);
  amps << Complex(1.0, 0.0), Complex(1.0, 0.0);
  try {
    PureState::validated(amps);
    FAIL("expected NotNormalized");
  } catch (const NotNormalized& e) {
    REQUIRE_THAT(e.measured(), WithinAbs(std::sqrt(2.0) - 1.0, 1e-12));
  }
}

TEST_CASE("random_density produces valid states of the requested rank", "[states]") {
  for (int rank : {1, 2, 3}) {
    const DensityMatrix rho = random_density(3, rank, 42);
    REQUIRE_THAT(rho.mat().trace().real(), WithinAbs(1.0, 1e-12));
    const HermitianEigen eig = hermitian_eig(rho.mat());
    REQUIRE(eig.eigenvalues.minCoeff() > -1e-12);
    int positive = 0;
    for (Eigen::Index i = 0; i < 3; ++i) {
      if (eig.eigenvalues(i) > 1e-10) ++positive;
    }
    REQUIRE(positive <= rank);
  }
}

TEST_CASE("random_density is deterministic in the seed", "[states]") {
  const DensityMatrix a = random_density(3, 2, 7);
  const DensityMatrix b = random_density(3, 2, 7);
  const DensityMatrix c = random_density(3, 2, 8);
  REQUIRE((a.mat() - b.mat()).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((a.mat() - c.mat()).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("random_density rejects bad ranks", "[states]") {
  REQUIRE_THROWS_AS(random_density(3, 0, 1), BadRank);
  REQUIRE_THROWS_AS(random_density(3, 4, 1), BadRank);
}

TEST_CASE("random_pure is normalized", "[states]") {
  const PureState psi = random_pure(5, 9);
  REQUIRE_THAT(psi.amplitudes().norm(), WithinAbs(1.0, 1e-12));
}
