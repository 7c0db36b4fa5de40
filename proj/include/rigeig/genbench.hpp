#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <vector>

#include "rigeig/matrix.hpp"

namespace rigeig {

/// Deterministic 64-bit generator (splitmix64). State advances by the odd
/// constant 0x9E3779B97F4A7C15; the output is the new state mixed by two
/// xor-shift-multiply rounds (>>30 * 0xBF58476D1CE4E5B9, >>27 *
/// 0x94D049BB133111EB) and a final >>31 xor. Reproducible from the seed
/// alone in any language.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [-1, 1): top 53 bits scaled to [0,1), then affinely mapped.
    double uniform_pm1() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    }

  private:
    std::uint64_t state_;
};

/// Test-matrix family: dimension N+1, spectrum {0} and the N-th roots of
/// unity, conjugated by a random X with entries in [-1,1]+i[-1,1].
struct GeneratorSpec {
    std::size_t N = 5;
    std::uint64_t seed = 0;
    double rad = 0.0;  // entrywise radius, both real and imaginary part
};

enum class Method { RadiiPolynomials, Krawczyk };
const char* to_string(Method m);
std::optional<Method> method_from_string(std::string_view name);

/// Floating midpoint X diag(0, e^{2 pi i j / N}) X^{-1}. Entries of X are
/// drawn row-major, real part then imaginary part, from SplitMix64; a
/// numerically singular draw moves to the substream seed + attempt *
/// 0x9E3779B97F4A7C15 (at most 10 attempts).
ComplexMatrix generate_midpoint(std::size_t N, std::uint64_t seed);

IntervalMatrix generate_test_matrix(const GeneratorSpec& spec);

struct SweepRow {
    double rad = 0.0;
    // verified radius per candidate index, nullopt on failure
    std::vector<std::optional<double>> radii;
    std::optional<double> mean_radius;  // over successes
};

struct SweepReport {
    std::vector<SweepRow> rows;
};

/// Fixed X across the whole schedule (one matrix, growing entry radii);
/// candidates are computed once from the midpoint.
SweepReport radius_sweep(const GeneratorSpec& base, std::span<const double> rad_schedule,
                         Method method);

struct BenchRow {
    std::size_t N = 0;
    Method method = Method::RadiiPolynomials;
    double seconds = 0.0;
    std::size_t success_count = 0;
};

/// Wall time (best of 3 warm runs, monotonic clock) of the full
/// eigendecomposition attempt per method per N, with success counts.
std::vector<BenchRow> timing_benchmark(std::span<const std::size_t> n_schedule, double rad,
                                       const std::set<Method>& methods,
                                       std::uint64_t seed = 0);

// CSV emission: header row, failures as the literal token FAIL, radii in
// scientific notation with 15 significant digits.
void write_sweep_csv(std::ostream& os, const SweepReport& report);
void write_bench_csv(std::ostream& os, std::span<const BenchRow> rows);

}  // namespace rigeig
