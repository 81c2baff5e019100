#pragma once
#include <cstdint>
#include <vector>

#include "mawc/channel.hpp"
#include "mawc/factored.hpp"
#include "mawc/scheme1.hpp"

namespace mawc {

// Exact mutual information I(M;C) in bits for a one-time pad c = (m+k) mod q
// with k uniform on [0,q) and m distributed as msg_pmf (size q).
double otp_leakage(const std::vector<double>& msg_pmf, uint64_t modulus);

// Security index of a key given an observation: log2(|K|) - H(K|Z), computed
// from a joint table P(k,z) with |K| rows and |Z| columns (row-major).
double security_index(const std::vector<double>& joint_kz, int nk, int nz);

// Exact leakage I(M1,M2; Z^n,S^n) in bits of one payload block of the
// key-assisted scheme, with the state sequence revealed to the eavesdropper
// (worst case): codebooks drawn from `seed`, encrypted layers padded with
// ideal uniform keys, randomization indices uniform. Enumerates the full
// message x observation joint; throws budget_error beyond kLeakCells cells.
double scheme1_block_leakage(const Scheme1Config& cfg, uint64_t seed);
inline constexpr uint64_t kLeakCells = 1ull << 24;

// Channel-resolvability diagnostic: average over `codebooks` random codebook
// pairs (rates rr1, rr2, i.i.d. from the factorization's input marginals) of
//   D( induced P(z^n, s^n) || product P(z,s)^n ).
// Enumerates all (|Z||S|)^n output cells; throws budget_error beyond kDivCells.
double resolvability_divergence(const SdMawc& ch, const FactoredJoint& fj,
                                double rr1, double rr2, int n, int codebooks,
                                uint64_t seed);
inline constexpr uint64_t kDivCells = 1ull << 20;

}  // namespace mawc
