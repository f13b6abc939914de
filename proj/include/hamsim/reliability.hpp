#pragma once

#include <vector>

#include "hamsim/campaign.hpp"
#include "hamsim/layout.hpp"

namespace hamsim {

// Inputs to the Poisson per-word fault model. fc_table[i-1] = P{FC|iF}, the
// probability that i faults in a word are corrected; Ne = fc_table.size().
struct ReliabilityInput {
    double lambda = 0;        // per-bit fault rate, > 0
    int n_word = 32;          // bits per memory word
    int words = 50;           // M, words in the memory
    std::vector<double> fc_table;
};

void validate(const ReliabilityInput& in);

// P{iF}: probability of exactly i faulty bits in an n_word-bit word by time t.
double p_if(int i, const ReliabilityInput& in, double t);

// P{MF} = 1 - e^(-lambda * n * t): probability the word has any fault.
double p_mf(const ReliabilityInput& in, double t);

// Fault-correction probability sum_{i=1..Ne} fc[i] * P{iF} / P{MF}.
// Throws std::domain_error at t = 0 (P{MF} = 0).
double f_c(const ReliabilityInput& in, double t);

// R(t) = (1 - P{MF} + sum_{i=1..Ne} P{iF} * P{FC|iF})^M.
double reliability(const ReliabilityInput& in, double t);

// fc table from a campaign: group G_i DC rate as a fraction, i = 1..4.
// Throws if the result lacks patterns from any group.
std::vector<double> fc_table_from_campaign(const CampaignResult& result);

struct RedundancyProfile {
    int r_total = 0;  // redundancy bits per line
    int n_total = 0;  // coded bits per line (uncovered columns excluded)
    double tr = 0;    // r_total / n_total
};

RedundancyProfile redundancy_rate(const LineLayout& layout);

// Solves lambda so that reliability(t_anchor) = r_anchor by bisection
// (R is strictly decreasing in lambda whenever some fc entry < 1).
// Throws std::runtime_error if no bracket exists.
double calibrate_lambda(const ReliabilityInput& in, double t_anchor, double r_anchor);

}  // namespace hamsim
