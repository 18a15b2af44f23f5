#include <doctest.h>

#include "decpauli/pauli.hpp"
#include "support/oracles.hpp"

using namespace decpauli;
using testsupport::cz_matrix;
using testsupport::kron;
using testsupport::matmul;
using testsupport::pauli_matrix;
using testsupport::phase_aligned_matrix_distance;

TEST_CASE("labels and masks") {
  PauliString p;
  p.n = 3;
  p.x_mask = 0b011;
  p.z_mask = 0b110;
  CHECK(p.label() == "XYZ");
  CHECK_FALSE(p.is_identity());
  p.validate();

  PauliString id;
  id.n = 2;
  CHECK(id.is_identity());
  CHECK(id.label() == "II");
}

TEST_CASE("validate rejects out-of-range masks") {
  PauliString p;
  p.n = 2;
  p.x_mask = 0b100;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("cz conjugation of the named cases") {
  // X (x) I -> X (x) Z
  PauliString p = pauli_from_pair(Pauli1::X, Pauli1::I, 0, 1, 2);
  PauliString out = conjugate_by_cz(p, 0, 1);
  CHECK(out.label() == "XZ");

  // Z (x) Z commutes with CZ
  p = pauli_from_pair(Pauli1::Z, Pauli1::Z, 0, 1, 2);
  out = conjugate_by_cz(p, 0, 1);
  CHECK(out.label() == "ZZ");

  // identity stays identity
  p = pauli_from_pair(Pauli1::I, Pauli1::I, 0, 1, 2);
  CHECK(conjugate_by_cz(p, 0, 1).is_identity());
}

TEST_CASE("cz conjugation matches the 4x4 matrix oracle for all 16 pairs") {
  const auto& cz = cz_matrix();
  for (int ca = 0; ca < 4; ++ca) {
    for (int cb = 0; cb < 4; ++cb) {
      const auto pa = static_cast<Pauli1>(ca);
      const auto pb = static_cast<Pauli1>(cb);
      const PauliString pre = pauli_from_pair(pa, pb, 0, 1, 2);
      const PauliString post = conjugate_by_cz(pre, 0, 1);

      // qubit 0 is the low bit, so it sits in the right kron factor
      const auto pre_mat =
          kron(pauli_matrix(pre.label()[1]), pauli_matrix(pre.label()[0]));
      const auto post_mat =
          kron(pauli_matrix(post.label()[1]), pauli_matrix(post.label()[0]));
      const auto conj = matmul(matmul(cz, pre_mat), cz);
      CHECK(phase_aligned_matrix_distance(conj, post_mat) < 1e-12);
    }
  }
}
