#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "radcom/synth/params.hpp"
#include "radcom/synth/types.hpp"

namespace radcom::synth {

// Data bits feeding the digital modulators, deterministic in the seed. Frame
// symbol k (k >= 0) always uses bit k of this stream regardless of shaping
// history, so demodulators can check recovered bits against it directly.
std::vector<int> seeded_bits(std::uint64_t seed, int count);

// Clean baseband record of arbitrary length; synth_frame takes the first
// 128 samples. Longer records are used by the spectral oracles.
std::vector<std::complex<double>> gen_samples(Modulation mod, const SynthParams& p, std::uint64_t seed, int n);

IQFrame gen_pcw(const SynthParams& p, std::uint64_t seed);
IQFrame gen_fmcw(const SynthParams& p, std::uint64_t seed);
IQFrame gen_bpsk(const SynthParams& p, std::uint64_t seed);
IQFrame gen_am_dsb(const SynthParams& p, std::uint64_t seed);
IQFrame gen_am_ssb(const SynthParams& p, std::uint64_t seed);
IQFrame gen_ask(const SynthParams& p, std::uint64_t seed);
IQFrame gen_gfsk(const SynthParams& p, std::uint64_t seed);
IQFrame gen_dsss_cck(const SynthParams& p, std::uint64_t seed);
IQFrame gen_dsss_oqpsk(const SynthParams& p, std::uint64_t seed);

// Clean (impairment-free) frame for a valid pairing, deterministic in
// (pair, params, seed).
IQFrame synth_frame(const ModSigPair& pair, const SynthParams& p, std::uint64_t seed);

// CCK codeword phases from 8 data bits: pairs map to QPSK phases
// (00,01,10,11) -> (0, pi/2, pi, 3pi/2); chips follow the 802.11b spreading
// equation with chips 3 and 6 negated.
std::vector<std::complex<double>> cck_codeword(const int bits[8]);

}  // namespace radcom::synth
