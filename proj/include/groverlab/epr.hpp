// epr.hpp
// Two-photon singlet toy model: polarization entanglement, measurement in
// the horizontal/vertical basis, and the reduce-then-evolve versus
// evolve-then-reduce equivalence. Spatial degrees of freedom are discrete
// tags (common origin at t=0, separated at t=T), not wavefunctions.

#pragma once

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "groverlab/measure.hpp"
#include "groverlab/state.hpp"

namespace groverlab {

enum class Photon { Left, Right };
enum class PhotonStage { AtOrigin, Separated };

/// Polarization amplitudes over the basis (L,R) in {00, 01, 10, 11},
/// 0 = horizontal, plus the where-are-the-photons tag.
struct TwoPhotonState {
    PhotonStage stage = PhotonStage::AtOrigin;
    std::array<Cx, 4> amp{};  // index = L_bit * 2 + R_bit

    double norm() const {
        double n2 = 0.0;
        for (const Cx& a : amp) n2 += std::norm(a);
        return std::sqrt(n2);
    }
};

/// (|0>_L |1>_R - |1>_L |0>_R) / sqrt(2), both photons at the origin.
inline TwoPhotonState make_singlet() {
    const double s = 1.0 / std::sqrt(2.0);
    return TwoPhotonState{PhotonStage::AtOrigin, {Cx{0, 0}, Cx{s, 0}, Cx{-s, 0}, Cx{0, 0}}};
}

/// Free flight from the origin to the separated locations; polarization
/// amplitudes are untouched.
inline TwoPhotonState evolve_to_T(const TwoPhotonState& state) {
    if (state.stage != PhotonStage::AtOrigin) {
        throw std::invalid_argument("evolve_to_T: state is already at t = T");
    }
    return TwoPhotonState{PhotonStage::Separated, state.amp};
}

struct PhotonMeasurement {
    Photon which = Photon::Left;
    int outcome = 0;
    double probability = 0.0;
    TwoPhotonState post;
};

/// Born-rule measurement of one photon's polarization; the post state is
/// the renormalized projection at the same stage.
inline PhotonMeasurement measure_photon(const TwoPhotonState& state, Photon which,
                                        const MeasureMode& mode) {
    const auto bit_of = [which](int idx) {
        return which == Photon::Left ? (idx >> 1) & 1 : idx & 1;
    };
    std::array<double, 2> prob{0.0, 0.0};
    for (int idx = 0; idx < 4; ++idx) {
        prob[static_cast<std::size_t>(bit_of(idx))] += std::norm(state.amp[static_cast<std::size_t>(idx)]);
    }

    int outcome = 0;
    if (std::holds_alternative<Forced>(mode)) {
        const Bits o = std::get<Forced>(mode).outcome;
        if (o > 1) {
            throw std::invalid_argument("measure_photon: outcome must be 0 or 1");
        }
        outcome = static_cast<int>(o);
        if (prob[static_cast<std::size_t>(outcome)] <= kAmpTol) {
            throw std::domain_error("measure_photon: forced outcome has zero probability");
        }
    } else {
        std::mt19937_64 eng(std::get<Sampled>(mode).seed);
        outcome = detail::canonical_unit(eng) < prob[0] ? 0 : 1;
    }

    TwoPhotonState post = state;
    double n2 = 0.0;
    for (int idx = 0; idx < 4; ++idx) {
        if (bit_of(idx) != outcome) {
            post.amp[static_cast<std::size_t>(idx)] = Cx{0, 0};
        } else {
            n2 += std::norm(post.amp[static_cast<std::size_t>(idx)]);
        }
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (Cx& a : post.amp) a *= inv;
    return PhotonMeasurement{which, outcome, prob[static_cast<std::size_t>(outcome)], post};
}

/// P(L = l, R = r) by enumeration.
inline std::array<double, 4> photon_joint_distribution(const TwoPhotonState& state) {
    std::array<double, 4> p{};
    for (int idx = 0; idx < 4; ++idx) {
        p[static_cast<std::size_t>(idx)] = std::norm(state.amp[static_cast<std::size_t>(idx)]);
    }
    return p;
}

struct BackdatingReport {
    // Per L outcome b: largest amplitude difference between
    // evolve-then-measure and reduce-at-origin-then-evolve.
    std::array<double, 2> pipeline_diff{0.0, 0.0};
    std::array<bool, 2> pipelines_agree{false, false};
    std::array<double, 4> joint_measure_at_T{};
    std::array<double, 4> joint_backdated{};
    bool joints_equal = false;
    bool anticorrelated = false;  // P(L = R) exactly zero

    bool all_ok() const {
        return pipelines_agree[0] && pipelines_agree[1] && joints_equal &&
               anticorrelated;
    }
};

/// Compares, for each L outcome, measuring at t = T against backdating the
/// reduction to t = 0 and evolving the reduced state forward. Equality of
/// final amplitudes and of the joint (L, R) distributions is the whole
/// operational content checked here.
inline BackdatingReport backdating_equivalence_check(double tol = kAmpTol) {
    BackdatingReport report;

    for (int b = 0; b < 2; ++b) {
        // (A) evolve, then reduce at T.
        const TwoPhotonState at_T = evolve_to_T(make_singlet());
        const TwoPhotonState measured =
            measure_photon(at_T, Photon::Left, Forced{static_cast<Bits>(b)}).post;
        // (B) reduce at t = 0, then evolve.
        const TwoPhotonState reduced =
            measure_photon(make_singlet(), Photon::Left, Forced{static_cast<Bits>(b)}).post;
        const TwoPhotonState backdated = evolve_to_T(reduced);

        double diff = 0.0;
        for (int idx = 0; idx < 4; ++idx) {
            diff = std::max(diff, std::abs(measured.amp[static_cast<std::size_t>(idx)] -
                                           backdated.amp[static_cast<std::size_t>(idx)]));
        }
        report.pipeline_diff[static_cast<std::size_t>(b)] = diff;
        report.pipelines_agree[static_cast<std::size_t>(b)] =
            diff <= tol && measured.stage == backdated.stage;
    }

    // Joint (L, R) distribution along both pipelines. Backdated route:
    // P(L = b) fixed at the origin, the R distribution read after evolving.
    report.joint_measure_at_T = photon_joint_distribution(evolve_to_T(make_singlet()));
    for (int b = 0; b < 2; ++b) {
        const PhotonMeasurement at_origin =
            measure_photon(make_singlet(), Photon::Left, Forced{static_cast<Bits>(b)});
        const TwoPhotonState later = evolve_to_T(at_origin.post);
        for (int r = 0; r < 2; ++r) {
            const std::size_t idx = static_cast<std::size_t>(b * 2 + r);
            double p_r = 0.0;
            for (int l = 0; l < 2; ++l) {
                p_r += std::norm(later.amp[static_cast<std::size_t>(l * 2 + r)]);
            }
            report.joint_backdated[idx] = at_origin.probability * p_r;
        }
    }

    double joint_diff = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        joint_diff = std::max(joint_diff, std::abs(report.joint_measure_at_T[i] -
                                                   report.joint_backdated[i]));
    }
    report.joints_equal = joint_diff <= tol;
    report.anticorrelated = report.joint_measure_at_T[0] == 0.0 &&
                            report.joint_measure_at_T[3] == 0.0 &&
                            report.joint_backdated[0] == 0.0 &&
                            report.joint_backdated[3] == 0.0;
    return report;
}

}  // namespace groverlab
