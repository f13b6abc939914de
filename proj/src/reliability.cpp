#include "hamsim/reliability.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hamsim {

void validate(const ReliabilityInput& in) {
    if (!(in.lambda > 0)) throw std::invalid_argument("reliability: lambda must be > 0");
    if (in.n_word < 1) throw std::invalid_argument("reliability: n_word must be >= 1");
    if (in.words < 1) throw std::invalid_argument("reliability: words must be >= 1");
    if (in.fc_table.empty()) throw std::invalid_argument("reliability: fc_table must be nonempty");
    if (static_cast<int>(in.fc_table.size()) > in.n_word) {
        throw std::invalid_argument("reliability: Ne exceeds n_word");
    }
    for (double v : in.fc_table) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("reliability: fc_table entries must lie in [0,1]");
        }
    }
}

namespace {

double binomial(int n, int i) {
    // n <= 64 in practice; the multiplicative form stays well within double precision
    double r = 1.0;
    for (int j = 1; j <= i; ++j) {
        r = r * static_cast<double>(n - i + j) / static_cast<double>(j);
    }
    return r;
}

}  // namespace

double p_if(int i, const ReliabilityInput& in, double t) {
    if (i < 0 || i > in.n_word) {
        throw std::invalid_argument("p_if: i must lie in 0..n_word, got " + std::to_string(i));
    }
    if (t < 0) throw std::invalid_argument("p_if: t must be >= 0");
    // (1 - e^(-lambda t)) via expm1 to keep small-lambda*t accuracy
    double p = -std::expm1(-in.lambda * t);
    double q = std::exp(-in.lambda * static_cast<double>(in.n_word - i) * t);
    return binomial(in.n_word, i) * std::pow(p, i) * q;
}

double p_mf(const ReliabilityInput& in, double t) {
    if (t < 0) throw std::invalid_argument("p_mf: t must be >= 0");
    return -std::expm1(-in.lambda * static_cast<double>(in.n_word) * t);
}

double f_c(const ReliabilityInput& in, double t) {
    double mf = p_mf(in, t);
    if (mf == 0.0) throw std::domain_error("f_c: P{MF} = 0 at t = 0");
    double s = 0;
    for (std::size_t i = 0; i < in.fc_table.size(); ++i) {
        s += in.fc_table[i] * p_if(static_cast<int>(i) + 1, in, t);
    }
    return s / mf;
}

double reliability(const ReliabilityInput& in, double t) {
    double base = 1.0 - p_mf(in, t);
    for (std::size_t i = 0; i < in.fc_table.size(); ++i) {
        base += in.fc_table[i] * p_if(static_cast<int>(i) + 1, in, t);
    }
    return std::pow(base, in.words);
}

std::vector<double> fc_table_from_campaign(const CampaignResult& result) {
    std::vector<double> fc;
    for (int g = 1; g <= 4; ++g) {
        bool have = false;
        for (const auto& p : result.per_pattern) {
            if (group_of(p.id) == g) have = true;
        }
        if (!have) {
            throw std::invalid_argument("fc_table_from_campaign: campaign result lacks group G" +
                                        std::to_string(g));
        }
        fc.push_back(result.group_rates(g).dc / 100.0);
    }
    return fc;
}

RedundancyProfile redundancy_rate(const LineLayout& layout) {
    if (layout.blocks().empty()) {
        throw std::invalid_argument("redundancy_rate: layout '" + layout.name() + "' has no blocks");
    }
    RedundancyProfile p;
    for (const auto& blk : layout.blocks()) {
        p.r_total += blk.code.r;
        p.n_total += blk.code.n;
    }
    p.tr = static_cast<double>(p.r_total) / static_cast<double>(p.n_total);
    return p;
}

double calibrate_lambda(const ReliabilityInput& in, double t_anchor, double r_anchor) {
    if (!(t_anchor > 0)) throw std::invalid_argument("calibrate_lambda: anchor t must be > 0");
    if (!(r_anchor > 0 && r_anchor < 1)) {
        throw std::invalid_argument("calibrate_lambda: anchor R must lie in (0,1)");
    }
    ReliabilityInput work = in;
    auto eval = [&](double lam) {
        work.lambda = lam;
        return reliability(work, t_anchor);
    };
    double lo = 1e-15, hi = 1e-15;
    // grow hi until R(hi) < target; R decreases in lambda
    while (eval(hi) > r_anchor) {
        hi *= 10;
        if (hi > 1e6) throw std::runtime_error("calibrate_lambda: failed to bracket the anchor");
    }
    if (eval(lo) < r_anchor) {
        throw std::runtime_error("calibrate_lambda: anchor unreachable even at lambda = 1e-15");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (eval(mid) > r_anchor) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace hamsim
