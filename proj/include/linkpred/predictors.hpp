#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "linkpred/errors.hpp"
#include "linkpred/graph.hpp"
#include "linkpred/local_indices.hpp"
#include "linkpred/matrix_indices.hpp"
#include "linkpred/ranking.hpp"
#include "linkpred/walk_indices.hpp"

namespace linkpred {

// The 25 prediction algorithms, in registry order.
enum class Algorithm {
    CN,
    RA,
    LP,
    AA,
    PA,
    Jaccard,
    ACT,
    Sim,
    L3,
    A3,
    Katz,
    LO,
    Salton,
    Sorensen,
    HPI,
    HDI,
    LRW,
    SRW,
    LHN1,
    MFI,
    LNBAA,
    LNBRA,
    S1,
    CLE,
    CCPA,
};

inline constexpr std::size_t kAlgorithmCount = 25;

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::CN: return "CN";
        case Algorithm::RA: return "RA";
        case Algorithm::LP: return "LP";
        case Algorithm::AA: return "AA";
        case Algorithm::PA: return "PA";
        case Algorithm::Jaccard: return "Jaccard";
        case Algorithm::ACT: return "ACT";
        case Algorithm::Sim: return "Sim";
        case Algorithm::L3: return "L3";
        case Algorithm::A3: return "A3";
        case Algorithm::Katz: return "Katz";
        case Algorithm::LO: return "LO";
        case Algorithm::Salton: return "Salton";
        case Algorithm::Sorensen: return "Sorensen";
        case Algorithm::HPI: return "HPI";
        case Algorithm::HDI: return "HDI";
        case Algorithm::LRW: return "LRW";
        case Algorithm::SRW: return "SRW";
        case Algorithm::LHN1: return "LHN-1";
        case Algorithm::MFI: return "MFI";
        case Algorithm::LNBAA: return "LNBAA";
        case Algorithm::LNBRA: return "LNBRA";
        case Algorithm::S1: return "S1";
        case Algorithm::CLE: return "CLE";
        case Algorithm::CCPA: return "CCPA";
    }
    return "?";
}

inline std::vector<Algorithm> all_algorithms() {
    std::vector<Algorithm> out;
    out.reserve(kAlgorithmCount);
    for (std::size_t i = 0; i < kAlgorithmCount; ++i) out.push_back(Algorithm(i));
    return out;
}

inline Algorithm parse_algorithm(const std::string& name) {
    for (Algorithm a : all_algorithms())
        if (name == algorithm_name(a)) return a;
    // spelling aliases
    if (name == "Sørensen" || name == "Sorenson" || name == "Sørenson") return Algorithm::Sorensen;
    if (name == "LHN1") return Algorithm::LHN1;
    throw domain_error("unknown algorithm: " + name);
}

// Fixed-default parameters; every knob belongs to exactly one algorithm.
struct AlgorithmParams {
    double lp_epsilon = 0.001;
    double katz_beta = 0.0;  // 0 = auto
    int walk_steps = 3;
    double lo_alpha = 0.1;
    double ccpa_alpha = 0.8;
};

// Set a named parameter, validating it belongs to the algorithm's schema.
inline void set_param(AlgorithmParams& params, Algorithm alg, const std::string& key,
                      double value) {
    auto reject = [&] {
        throw domain_error(std::string("parameter '") + key + "' not valid for " +
                           algorithm_name(alg));
    };
    switch (alg) {
        case Algorithm::LP:
            if (key == "epsilon") params.lp_epsilon = value;
            else reject();
            break;
        case Algorithm::Katz:
            if (key == "beta") params.katz_beta = value;
            else reject();
            break;
        case Algorithm::LRW:
        case Algorithm::SRW:
            if (key == "t") params.walk_steps = int(value);
            else reject();
            break;
        case Algorithm::LO:
            if (key == "alpha") params.lo_alpha = value;
            else reject();
            break;
        case Algorithm::CCPA:
            if (key == "alpha") params.ccpa_alpha = value;
            else reject();
            break;
        default:
            reject();
    }
}

namespace detail {

inline bool local_rule_for(Algorithm a, LocalRule& rule) {
    switch (a) {
        case Algorithm::CN: rule = LocalRule::CN; return true;
        case Algorithm::RA: rule = LocalRule::RA; return true;
        case Algorithm::AA: rule = LocalRule::AA; return true;
        case Algorithm::PA: rule = LocalRule::PA; return true;
        case Algorithm::Jaccard: rule = LocalRule::Jaccard; return true;
        case Algorithm::Salton: rule = LocalRule::Salton; return true;
        case Algorithm::S1: rule = LocalRule::S1; return true;
        case Algorithm::Sorensen: rule = LocalRule::Sorensen; return true;
        case Algorithm::HPI: rule = LocalRule::HPI; return true;
        case Algorithm::HDI: rule = LocalRule::HDI; return true;
        case Algorithm::LHN1: rule = LocalRule::LHN1; return true;
        case Algorithm::Sim: rule = LocalRule::Sim; return true;
        case Algorithm::CCPA: rule = LocalRule::CCPA; return true;
        case Algorithm::LNBAA: rule = LocalRule::LNBAA; return true;
        case Algorithm::LNBRA: rule = LocalRule::LNBRA; return true;
        default: return false;
    }
}

inline bool matrix_rule_for(Algorithm a, MatrixRule& rule) {
    switch (a) {
        case Algorithm::LP: rule = MatrixRule::LP; return true;
        case Algorithm::Katz: rule = MatrixRule::Katz; return true;
        case Algorithm::L3: rule = MatrixRule::L3; return true;
        case Algorithm::A3: rule = MatrixRule::A3; return true;
        case Algorithm::ACT: rule = MatrixRule::ACT; return true;
        case Algorithm::MFI: rule = MatrixRule::MFI; return true;
        case Algorithm::LO: rule = MatrixRule::LO; return true;
        case Algorithm::CLE: rule = MatrixRule::CLE; return true;
        default: return false;
    }
}

}  // namespace detail

// Raw scores for every pair, in pair order.
inline std::vector<double> predictor_scores(const Graph& g_train, const std::vector<Edge>& pairs,
                                            Algorithm alg, const AlgorithmParams& params = {}) {
    LocalRule local;
    if (detail::local_rule_for(alg, local)) {
        LocalParams lp{params.ccpa_alpha};
        return local_scores(g_train, pairs, local, lp);
    }
    MatrixRule matrix;
    if (detail::matrix_rule_for(alg, matrix)) {
        MatrixParams mp;
        mp.lp_epsilon = params.lp_epsilon;
        mp.katz_beta = params.katz_beta;
        mp.lo_alpha = params.lo_alpha;
        return matrix_scores(g_train, pairs, matrix, mp);
    }
    WalkParams wp{params.walk_steps};
    return walk_scores(g_train, pairs, alg == Algorithm::LRW ? WalkRule::LRW : WalkRule::SRW, wp);
}

// Score every candidate and rank descending with seeded tie order.
inline RankedCandidates score_candidates(const Graph& g_train, const CandidateSet& cand,
                                         Algorithm alg, const AlgorithmParams& params,
                                         std::uint64_t tie_seed) {
    std::vector<double> scores;
    try {
        scores = predictor_scores(g_train, cand.pairs, alg, params);
    } catch (const numeric_error& e) {
        throw numeric_error(std::string(algorithm_name(alg)) + ": " + e.what());
    }
    for (double s : scores)
        if (!std::isfinite(s))
            throw numeric_error(std::string(algorithm_name(alg)) + ": non-finite score");
    return rank_candidates(cand, scores, tie_seed);
}

}  // namespace linkpred
