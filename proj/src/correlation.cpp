#include "signcorr/correlation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "signcorr/parallel.hpp"

namespace signcorr::lab {

namespace {

struct BlockCounts {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
    std::uint64_t agree = 0;
    std::uint64_t disagree = 0;
    std::uint64_t zero_hits = 0;
    std::vector<std::uint64_t> checkpoint_agree; // local agree at each checkpoint inside the block
    std::vector<std::uint8_t> flags;             // per-index agreement, when requested
};

struct BlockRun {
    std::vector<BlockCounts> blocks;
    std::uint64_t agree = 0;
    std::uint64_t disagree = 0;
    std::uint64_t zero_hits = 0;
};

BlockRun count_blocks(const SignPairSource& source, std::uint64_t n, unsigned threads,
                      const std::vector<std::uint64_t>& checkpoints, bool keep_flags)
{
    const unsigned workers = resolve_threads(threads);
    const std::uint64_t block_count = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, n));
    BlockRun run;
    run.blocks.resize(block_count);
    for (std::uint64_t b = 0; b < block_count; ++b) {
        run.blocks[b].begin = n * b / block_count;
        run.blocks[b].end = n * (b + 1) / block_count;
    }

    parallel_for(block_count, workers, [&](std::size_t b) {
        BlockCounts& blk = run.blocks[b];
        auto cursor = source.clone();
        cursor->seek(blk.begin);
        if (keep_flags) blk.flags.assign(blk.end - blk.begin, 0);
        auto cp = std::upper_bound(checkpoints.begin(), checkpoints.end(), blk.begin);
        for (std::uint64_t i = blk.begin; i < blk.end; ++i) {
            const SignPair s = cursor->next();
            if (s.x == Sign::zero || s.y == Sign::zero) {
                ++blk.zero_hits;
            } else if (s.x == s.y) {
                ++blk.agree;
                if (keep_flags) blk.flags[i - blk.begin] = 1;
            } else {
                ++blk.disagree;
            }
            while (cp != checkpoints.end() && *cp == i + 1) {
                blk.checkpoint_agree.push_back(blk.agree);
                ++cp;
            }
        }
    });

    for (const auto& blk : run.blocks) {
        run.agree += blk.agree;
        run.disagree += blk.disagree;
        run.zero_hits += blk.zero_hits;
    }
    return run;
}

void check_target(double target)
{
    if (!(target >= 0.0 && target <= 1.0)) throw std::invalid_argument("target limit must lie in [0, 1]");
}

// Walks the per-index flags in order; R(N) is formed exactly as a
// sequential pass would, independent of the block split.
template <typename Visit>
void walk_remainder(const BlockRun& run, double target, Visit&& visit)
{
    std::uint64_t agree = 0;
    std::uint64_t n = 0;
    for (const auto& blk : run.blocks)
        for (std::uint8_t f : blk.flags) {
            agree += f;
            ++n;
            visit(n, agree, static_cast<double>(agree) - target * static_cast<double>(n));
        }
}

std::string format_number(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

std::vector<std::uint64_t> default_checkpoints(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = 1; c < n; c *= 2) out.push_back(c);
    if (n > 0) out.push_back(n);
    return out;
}

CorrelationReport estimate_limit(const SignPairSource& source, std::uint64_t n, const EstimateOptions& options)
{
    if (n == 0) throw std::invalid_argument("estimate_limit: N must be at least 1");
    if (options.target) check_target(*options.target);

    std::vector<std::uint64_t> checkpoints = options.checkpoints.empty() ? default_checkpoints(n) : options.checkpoints;
    std::erase_if(checkpoints, [n](std::uint64_t c) { return c == 0 || c > n; });
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());

    const BlockRun run = count_blocks(source, n, options.threads, checkpoints, options.target.has_value());

    CorrelationReport report;
    report.source = source.describe();
    report.n = n;
    report.agree = run.agree;
    report.disagree = run.disagree;
    report.zero_hits = run.zero_hits;
    report.estimate = static_cast<double>(run.agree) / static_cast<double>(n);
    report.target = options.target;

    std::uint64_t before = 0;
    auto cp = checkpoints.begin();
    for (const auto& blk : run.blocks) {
        for (std::uint64_t local : blk.checkpoint_agree) {
            Checkpoint c;
            c.n = *cp++;
            c.agree = before + local;
            c.estimate = static_cast<double>(c.agree) / static_cast<double>(c.n);
            if (options.target) c.remainder = static_cast<double>(c.agree) - *options.target * static_cast<double>(c.n);
            report.checkpoints.push_back(c);
        }
        before += blk.agree;
    }

    if (options.target) {
        double worst = -1.0;
        walk_remainder(run, *options.target, [&](std::uint64_t big_n, std::uint64_t, double r) {
            if (std::abs(r) > worst) {
                worst = std::abs(r);
                report.argmax_remainder_n = big_n;
            }
        });
        report.max_abs_remainder = worst;
    }
    return report;
}

RemainderScan remainder_scan(const SignPairSource& source, std::uint64_t n_max, double target, std::uint64_t stride,
                             unsigned threads)
{
    if (n_max == 0) throw std::invalid_argument("remainder_scan: N_max must be at least 1");
    check_target(target);
    if (stride == 0) stride = 1;

    const BlockRun run = count_blocks(source, n_max, threads, {}, true);
    RemainderScan scan;
    scan.target = target;
    scan.n_max = n_max;
    scan.agree = run.agree;
    scan.zero_hits = run.zero_hits;
    double worst = -1.0;
    walk_remainder(run, target, [&](std::uint64_t big_n, std::uint64_t agree, double r) {
        if (std::abs(r) > worst) {
            worst = std::abs(r);
            scan.argmax_n = big_n;
        }
        if (big_n % stride == 0 || big_n == n_max)
            scan.series.push_back({big_n, agree, static_cast<double>(agree) / static_cast<double>(big_n), r});
    });
    scan.max_abs_remainder = worst;
    return scan;
}

std::string remainder_csv(const std::vector<RemainderPoint>& series, bool with_remainder)
{
    std::string out = "n,agree,estimate,remainder\n";
    for (const auto& p : series) {
        out += std::to_string(p.n);
        out += ',';
        out += std::to_string(p.agree);
        out += ',';
        out += format_number(p.estimate);
        out += ',';
        if (with_remainder) out += format_number(p.remainder);
        out += '\n';
    }
    return out;
}

std::uint64_t ChebyshevOrbit::agree_count(std::uint64_t big_n) const
{
    const auto per = static_cast<std::uint64_t>(period);
    std::uint64_t count = (big_n / per) * static_cast<std::uint64_t>(agree_per_period);
    for (std::uint64_t r = 0; r < big_n % per; ++r) count += agree[r];
    return count;
}

ChebyshevOrbit chebyshev_orbit(const Rational& a, std::int64_t ratio)
{
    const special::AngleFraction x_angle(a);
    const special::AngleFraction y_angle = x_angle.scaled(ratio);
    const std::int64_t den = a.den();
    const std::int64_t num = a.num();
    const std::int64_t num_y = y_angle.rational().num() * (den / y_angle.rational().den());

    // Sign of cos(2 pi r / den) from the residue r, by integer comparison.
    auto sign_at = [den](std::int64_t r) {
        const __int128 four_r = static_cast<__int128>(r) * 4;
        if (four_r == den || four_r == static_cast<__int128>(den) * 3) return 0;
        return (four_r < den || four_r > static_cast<__int128>(den) * 3) ? 1 : -1;
    };

    ChebyshevOrbit orbit;
    orbit.period = den;
    orbit.agree.resize(static_cast<std::size_t>(den));
    for (std::int64_t n = 0; n < den; ++n) {
        const auto rx = static_cast<std::int64_t>(static_cast<__int128>(n) * num % den);
        const auto ry = static_cast<std::int64_t>(static_cast<__int128>(n) * num_y % den);
        const int sx = sign_at(rx);
        const int sy = sign_at(ry);
        const bool same = sx != 0 && sx == sy;
        orbit.agree[static_cast<std::size_t>(n)] = same ? 1 : 0;
        orbit.agree_per_period += same ? 1 : 0;
    }
    orbit.density = Rational(orbit.agree_per_period, den);
    return orbit;
}

} // namespace signcorr::lab
