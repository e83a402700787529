#include "qpt/simon_tester.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qpt {

namespace {

// Bit t of the result is bit (t XOR c) of w, c < 64: butterfly per set bit.
std::uint64_t xor_permute_word(std::uint64_t w, unsigned c) {
    static constexpr std::uint64_t kMask[6] = {
        0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
        0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
    };
    for (unsigned b = 0; b < 6; ++b) {
        if (!(c & (1u << b))) continue;
        const unsigned sh = 1u << b;
        const std::uint64_t m = kMask[b];
        w = ((w & m) << sh) | ((w >> sh) & m);
    }
    return w;
}

std::size_t reverse_bits(std::size_t v, int bits) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) {
        r = (r << 1) | (v & 1);
        v >>= 1;
    }
    return r;
}

void require_basis(const BooleanFunction& f, const Basis& basis) {
    if (basis.ambient() != static_cast<std::size_t>(f.domain_bits()))
        throw std::invalid_argument("basis ambient dimension must equal the domain bit count");
    if (!basis.in_reduced_form())
        throw std::invalid_argument("basis must be in reduced form");
}

} // namespace

std::size_t n_s(const BooleanFunction& f, const BitString& s) {
    if (s.size() != static_cast<std::size_t>(f.domain_bits()))
        throw std::invalid_argument("n_s: shift length mismatch");
    const std::size_t N = f.size();
    const std::uint64_t sv = s.value();
    if (sv == 0) return N;

    const auto& words = f.table().words();
    const std::uint64_t s_high = sv >> 6;
    const unsigned s_low = static_cast<unsigned>(sv & 63);
    std::size_t diff = 0;
    for (std::size_t w = 0; w < words.size(); ++w) {
        const std::uint64_t g = xor_permute_word(words[w ^ s_high], s_low);
        diff += static_cast<std::size_t>(std::popcount(words[w] ^ g));
    }
    return N - diff;
}

std::size_t n_s_serial(const BooleanFunction& f, const BitString& s) {
    if (s.size() != static_cast<std::size_t>(f.domain_bits()))
        throw std::invalid_argument("n_s: shift length mismatch");
    const std::size_t N = f.size();
    const std::uint64_t sv = s.value();
    std::size_t agree = 0;
    for (std::size_t x = 0; x < N; ++x)
        if (f.at(x) == f.at(x ^ sv)) ++agree;
    return agree;
}

bool is_member(const BooleanFunction& f) {
    const std::size_t N = f.size();
    const auto n = static_cast<std::size_t>(f.domain_bits());
    for (std::uint64_t sv = 1; sv < N; ++sv)
        if (n_s(f, BitString::from_value(n, sv)) == N) return true;
    return false;
}

PromiseSet promise_set(const BooleanFunction& f) {
    const std::size_t N = f.size();
    const auto n = static_cast<std::size_t>(f.domain_bits());
    Basis s_space(n);
    std::size_t invariant_count = 0;
    for (std::uint64_t sv = 1; sv < N; ++sv) {
        const BitString s = BitString::from_value(n, sv);
        if (n_s(f, s) == N) {
            ++invariant_count;
            s_space.try_extend(s);
        }
    }
    // The invariance shifts of any f form a subspace; anything else is a bug.
    if (invariant_count + 1 != (std::size_t{1} << s_space.dimension()))
        throw std::logic_error("promise_set: invariance shifts not closed under XOR");
    return PromiseSet{s_space, orthogonal_space(s_space.vectors(), n)};
}

long distance_to_l(const BooleanFunction& f) {
    const std::size_t N = f.size();
    const auto n = static_cast<std::size_t>(f.domain_bits());
    long best = static_cast<long>(N);
#pragma omp parallel for reduction(min : best) schedule(static) if (N >= 4096)
    for (long long sv = 1; sv < static_cast<long long>(N); ++sv) {
        const std::size_t agree = n_s(f, BitString::from_value(n, static_cast<std::uint64_t>(sv)));
        const long d = static_cast<long>((N - agree) / 2);
        if (d < best) best = d;
    }
    return best;
}

long distance_to_l_serial(const BooleanFunction& f) {
    const std::size_t N = f.size();
    const auto n = static_cast<std::size_t>(f.domain_bits());
    long best = static_cast<long>(N);
    for (std::uint64_t sv = 1; sv < N; ++sv) {
        const std::size_t agree = n_s_serial(f, BitString::from_value(n, sv));
        best = std::min(best, static_cast<long>((N - agree) / 2));
    }
    return best;
}

QuantumState q_premeasure_state(const BooleanFunction& f, const Basis& basis) {
    require_basis(f, basis);
    const int n = f.domain_bits();
    const int k = static_cast<int>(basis.dimension());
    QuantumState state(n, k);
    state.hadamard_x();
    state.oracle_xor(f);
    state.hadamard_x();
    for (int j = 0; j < k; ++j) {
        state.cnot_x_to_z(static_cast<int>(basis.leading()[static_cast<std::size_t>(j)]), j);
        state.xor_x_conditional(basis.vectors()[static_cast<std::size_t>(j)], j);
        state.hadamard_z(j);
    }
    return state;
}

QuantumState closed_form_state(const BooleanFunction& f, const Basis& basis) {
    require_basis(f, basis);
    const int n = f.domain_bits();
    const int k = static_cast<int>(basis.dimension());
    const std::size_t N = f.size();

    std::uint64_t lead_mask = 0;
    for (std::size_t l : basis.leading()) lead_mask |= std::uint64_t{1} << l;
    std::vector<std::uint64_t> zv(basis.dimension());
    for (std::size_t j = 0; j < zv.size(); ++j) zv[j] = basis.vectors()[j].value();

    QuantumState state(n, k);
    auto& amp = state.amplitudes();
    std::fill(amp.begin(), amp.end(), std::complex<double>{0.0, 0.0});
    const double coeff = std::sqrt(static_cast<double>(std::size_t{1} << k)) / static_cast<double>(N);

    for (std::size_t x = 0; x < N; ++x) {
        const std::size_t fx = f.at(x) ? 1 : 0;
        std::size_t c_label = 0;
        for (std::size_t j = 0; j < zv.size(); ++j)
            if (std::popcount(x & zv[j]) & 1) c_label |= std::size_t{1} << (zv.size() - 1 - j);
        for (std::size_t y = 0; y < N; ++y) {
            if (y & lead_mask) continue;
            const std::size_t idx =
                (reverse_bits(y, n) << (k + 1)) | (fx << k) | c_label;
            const double sign = (std::popcount(x & y) & 1) ? -coeff : coeff;
            amp[idx] += sign;
        }
    }
    return state;
}

BitString sample_outcome(const OutcomeDistribution& dist, Rng& rng) {
    const double u = rng.unit();
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t pos = 0; pos < dist.p.size(); ++pos) {
        if (dist.p[pos] > 0.0) last_positive = pos;
        cumulative += dist.p[pos];
        if (u < cumulative) return BitString::from_value(static_cast<std::size_t>(dist.n), pos);
    }
    return BitString::from_value(static_cast<std::size_t>(dist.n), last_positive);
}

BitString subroutine_q(const BooleanFunction& f, const Basis& basis, Rng& rng) {
    return sample_outcome(q_premeasure_state(f, basis).x_distribution(), rng);
}

CosetPartition coset_partition(const Basis& basis, int n) {
    if (basis.ambient() != static_cast<std::size_t>(n))
        throw std::invalid_argument("coset_partition: ambient mismatch");
    const std::size_t N = std::size_t{1} << n;
    CosetPartition part;
    part.cells = std::size_t{1} << basis.dimension();
    part.cell_of.assign(N, 0);
    std::vector<std::uint64_t> zv(basis.dimension());
    for (std::size_t j = 0; j < zv.size(); ++j) zv[j] = basis.vectors()[j].value();
    for (std::size_t x = 0; x < N; ++x) {
        std::uint32_t c = 0;
        for (std::size_t j = 0; j < zv.size(); ++j)
            if (std::popcount(x & zv[j]) & 1) c |= std::uint32_t{1} << j;
        part.cell_of[x] = c;
    }
    return part;
}

bool is_coset_constant(const BooleanFunction& f, const Basis& basis) {
    const CosetPartition part = coset_partition(basis, f.domain_bits());
    std::vector<signed char> value(part.cells, -1);
    for (std::size_t x = 0; x < f.size(); ++x) {
        const signed char b = f.at(x) ? 1 : 0;
        signed char& slot = value[part.cell_of[x]];
        if (slot < 0)
            slot = b;
        else if (slot != b)
            return false;
    }
    return true;
}

std::size_t simon_l_max(int n, double eps) {
    if (n < 1) throw std::invalid_argument("simon_l_max: n must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
    const double raw = std::ceil(2.0 * std::log2(static_cast<double>(n)) / (eps * eps));
    return raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
}

const OutcomeDistribution& XDistributionCache::get(const BooleanFunction& f, const Basis& basis) {
    const std::string key = basis.canonical_key();
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (bound_table_.empty())
            bound_table_ = f.table();
        else if (bound_table_ != f.table())
            throw std::logic_error("XDistributionCache: reused across different functions");
        if (auto it = by_basis_.find(key); it != by_basis_.end()) return it->second;
    }
    OutcomeDistribution dist = q_premeasure_state(f, basis).x_distribution();
    std::lock_guard<std::mutex> lock(mutex_);
    return by_basis_.emplace(key, std::move(dist)).first->second;
}

namespace {

// Validates the measured-z invariants (independence, fresh leading
// coordinate, orthogonality to a known promise), then extends.
void checked_extend(Basis& basis, const BitString& z, const PromiseSet* promise) {
    const auto lead = z.leading_index();
    if (!lead) throw std::logic_error("checked_extend: zero vector");
    if (basis.contains(z))
        throw std::logic_error("internal consistency: measured z is dependent on the basis");
    for (std::size_t l : basis.leading())
        if (l == *lead)
            throw std::logic_error("internal consistency: measured z repeats a leading coordinate");
    if (promise != nullptr) {
        for (const auto& s : promise->s_space.vectors())
            if (inner_product(z, s) != 0)
                throw std::logic_error("internal consistency: measured z not orthogonal to the promise");
    }
    if (!basis.try_extend(z)) throw std::logic_error("checked_extend: extension failed");
}

} // namespace

SimonOutcome main_program(const BooleanFunction& f, double eps, Rng& rng, const SimonOptions& opts) {
    const int n = f.domain_bits();
    const std::size_t l_max = simon_l_max(n, eps);
    Basis basis(static_cast<std::size_t>(n));
    SimonOutcome out;

    for (int round = 0; round < n; ++round) {
        BitString z;
        bool nonzero = false;
        for (std::size_t l = 0; l < l_max; ++l) {
            if (opts.cache != nullptr) {
                z = sample_outcome(opts.cache->get(f, basis), rng);
            } else {
                z = subroutine_q(f, basis, rng);
            }
            ++out.oracle_calls;
            if (!z.is_zero()) { nonzero = true; break; }
        }
        if (!nonzero) {
            out.verdict = Verdict::accept;
            return out;
        }
        checked_extend(basis, z, opts.promise);
        ++out.extensions;
    }
    out.verdict = Verdict::reject;
    return out;
}

double main_program_exact_accept(const BooleanFunction& f, double eps) {
    const int n = f.domain_bits();
    if (n > 3) throw std::invalid_argument("exact acceptance mode is provided for n <= 3 only");
    const std::size_t l_max = simon_l_max(n, eps);
    const std::size_t N = f.size();

    std::unordered_map<std::string, double> memo;
    std::function<double(const Basis&)> accept_prob = [&](const Basis& basis) -> double {
        if (basis.dimension() == static_cast<std::size_t>(n)) return 0.0;
        const std::string key = basis.canonical_key();
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        const OutcomeDistribution dist = q_premeasure_state(f, basis).x_distribution();
        const double p0 = dist.p[0];
        const double zero_streak = std::pow(p0, static_cast<double>(l_max));
        double acc = zero_streak;
        if (p0 < 1.0) {
            const double reach_nonzero = (1.0 - zero_streak) / (1.0 - p0);
            for (std::size_t v = 1; v < N; ++v) {
                if (dist.p[v] <= 1e-13) continue;
                Basis extended = basis;
                if (!extended.try_extend(BitString::from_value(static_cast<std::size_t>(n), v)))
                    throw std::logic_error("exact mode: positive-probability outcome is dependent");
                acc += dist.p[v] * reach_nonzero * accept_prob(extended);
            }
        }
        memo.emplace(key, acc);
        return acc;
    };
    return accept_prob(Basis(static_cast<std::size_t>(n)));
}

PairedSample sample_p(int n, Rng& rng) {
    const std::size_t N = std::size_t{1} << n;
    const std::uint64_t sv = 1 + rng.below(N - 1);
    BooleanFunction f = BooleanFunction::zero(n);
    for (std::size_t x = 0; x < N; ++x) {
        const std::size_t partner = x ^ sv;
        if (x > partner) continue;
        const bool b = rng.flip();
        f.set(x, b);
        f.set(partner, b);
    }
    return PairedSample{BitString::from_value(static_cast<std::size_t>(n), sv), std::move(f)};
}

BooleanFunction sample_u(int n, Rng& rng) { return BooleanFunction::random(n, rng); }

PropertySpec make_simon_property(int n) {
    if (n < 1) throw std::invalid_argument("simon property: n must be positive");
    const std::size_t N = std::size_t{1} << n;
    PropertySpec spec;
    spec.n = N;
    spec.contains = [n](const BitString& table) { return is_member(BooleanFunction(n, table)); };
    spec.distance = [n](const BitString& table) { return distance_to_l(BooleanFunction(n, table)); };
    spec.sample_member = [n](Rng& rng) { return sample_p(n, rng).f.table(); };
    return spec;
}

} // namespace qpt
