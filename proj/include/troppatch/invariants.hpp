#pragma once

#include "cosheaf.hpp"
#include "parallel.hpp"

#include <string>
#include <vector>

namespace troppatch {

// Per-(p,q) tropical homology table plus the patchwork Betti numbers computed
// through the sign cosheaf, with the bound of the spectral-sequence estimate.
struct BettiReport {
    bool borel_moore = false;
    int dim = 0;
    std::vector<std::vector<int>> fp_homology; // [p][q], the E^1-page table
    std::vector<int> patchwork_betti;          // b_q of the patchwork
    std::vector<int> bound;                    // sum_p dim H_q(F_p)
    std::vector<int> slack;                    // bound - b_q
    bool bounds_hold = true;
    long long euler = 0;     // alternating sum of the patchwork Betti numbers
    long long signature = 0; // alternating sum over the tropical homology table
};

inline BettiReport betti_bounds(const TropicalComplex& c, const RealPhaseStructure& e,
                                bool borel_moore) {
    auto rep = validate_phase(c, e);
    if (!rep.ok) throw TroppatchError("PhaseInvalid", rep.violations.front());
    BettiReport out;
    out.borel_moore = borel_moore;
    out.dim = c.dim;
    out.fp_homology.resize(c.dim + 1);
    parallel_for(c.dim + 1, [&](int p) {
        out.fp_homology[p] = homology_dims(chain_complex(build_Fp(c, p), borel_moore));
    });
    auto s = build_sign_cosheaf(c, e, false);
    out.patchwork_betti = homology_dims(chain_complex(s, borel_moore));
    out.bound.assign(c.dim + 1, 0);
    out.slack.assign(c.dim + 1, 0);
    for (int q = 0; q <= c.dim; ++q) {
        for (int p = 0; p <= c.dim; ++p) out.bound[q] += out.fp_homology[p][q];
        out.slack[q] = out.bound[q] - out.patchwork_betti[q];
        if (out.slack[q] < 0) out.bounds_hold = false;
        long long sgn = (q % 2 == 0) ? 1 : -1;
        out.euler += sgn * out.patchwork_betti[q];
        for (int p = 0; p <= c.dim; ++p) out.signature += sgn * out.fp_homology[p][q];
    }
    return out;
}

// E^1-page dimensions (first page of the filtration spectral sequence):
// E^1_{q,p} = H_q(X; F_p); identical to the table inside betti_bounds.
inline std::vector<std::vector<int>> e1_page(const TropicalComplex& c, bool borel_moore) {
    std::vector<std::vector<int>> out(c.dim + 1);
    parallel_for(c.dim + 1, [&](int p) {
        out[p] = homology_dims(chain_complex(build_Fp(c, p), borel_moore));
    });
    return out;
}

struct EulerSignature {
    long long chi = 0, chi_bm = 0;       // patchwork Euler characteristics
    long long sigma = 0, sigma_bm = 0;   // tropical signatures
    long long chi_cells = 0, chi_bm_cells = 0; // from patchwork cell counts
    bool equal = false, equal_bm = false, chain_level_agree = false;
};

inline EulerSignature euler_signature(const TropicalComplex& c, const RealPhaseStructure& e) {
    auto rep = validate_phase(c, e);
    if (!rep.ok) throw TroppatchError("PhaseInvalid", rep.violations.front());
    EulerSignature out;
    auto s = build_sign_cosheaf(c, e, false);
    auto h = homology_dims(chain_complex(s, false));
    auto hbm = homology_dims(chain_complex(s, true));
    for (size_t q = 0; q < h.size(); ++q) {
        out.chi += (q % 2 == 0) ? h[q] : -h[q];
        out.chi_bm += (q % 2 == 0) ? hbm[q] : -hbm[q];
    }
    for (int p = 0; p <= c.dim; ++p) {
        auto f = build_Fp(c, p);
        auto fh = homology_dims(chain_complex(f, false));
        auto fhbm = homology_dims(chain_complex(f, true));
        for (size_t q = 0; q < fh.size(); ++q) {
            out.sigma += (q % 2 == 0) ? fh[q] : -fh[q];
            out.sigma_bm += (q % 2 == 0) ? fhbm[q] : -fhbm[q];
        }
    }
    auto pw = build_patchwork(c, e, false);
    out.chi_cells = pw.euler_compact();
    out.chi_bm_cells = pw.euler_all();
    out.equal = (out.chi == out.sigma);
    out.equal_bm = (out.chi_bm == out.sigma_bm);
    out.chain_level_agree = (out.chi == out.chi_cells) && (out.chi_bm == out.chi_bm_cells);
    return out;
}

// Tropical Hirzebruch genus chi_y = sum (-1)^{p+q} dim H_q^BM(F_p) y^p.
inline IPoly hirzebruch(const TropicalComplex& c) {
    IPoly out(c.dim + 1, 0);
    parallel_for(c.dim + 1, [&](int p) {
        auto h = homology_dims(chain_complex(build_Fp(c, p), true));
        for (size_t q = 0; q < h.size(); ++q)
            out[p] += ((p + static_cast<int>(q)) % 2 == 0) ? h[q] : -h[q];
    });
    poly_trim(out);
    return out;
}

// ---------------------------------------------------------------------------
// Manifold profiles for matroid fans: GF(2) Betti numbers of the patchwork of
// the compactified projective Bergman fan versus the projective-space profile,
// and the Las Vergnas order complexes versus the sphere profile.
// ---------------------------------------------------------------------------
struct ManifoldProfile {
    std::vector<int> patchwork_betti;
    std::vector<int> projective_space_profile; // all ones, length rank
    bool projective_space_match = false;
    std::vector<int> sphere_profile;           // S^{rank-2}
    std::vector<std::vector<int>> lv_betti;    // per tope
    bool sphere_match = false;
    bool bm_top_concentrated = true;           // H^BM of the fan sits in top degree
};

inline std::vector<int> sphere_betti_profile(int k) {
    // unreduced GF(2) Betti numbers of S^k; S^{-1} is the empty space
    if (k < 0) return {};
    if (k == 0) return {2};
    std::vector<int> b(k + 1, 0);
    b[0] = 1;
    b[k] = 1;
    return b;
}

inline ManifoldProfile matroid_manifold_profile(const Matroid& m, const OrientedMatroid& om) {
    auto val = validate_covectors(om);
    if (!val.report.ok) throw TroppatchError("InvalidOM", val.report.violations.front());
    if (val.underlying.ground != m.ground || val.underlying.bases != m.bases)
        throw TroppatchError("MatroidMismatch", "oriented matroid does not lie over the matroid");
    ManifoldProfile out;
    auto bw = bergman_fan_with_phase(om, true);
    // closure inside TP^{n-1}: pass to the coarse structure whose recession
    // cones are cones of the projective fan
    auto fan = Fan::tropical_projective(m.ground - 1);
    auto coarse = coarsen_to_fan(bw.complex, bw.phases, fan);
    auto cc = compactify(coarse.complex, fan);
    auto s = build_sign_cosheaf(cc, coarse.phases);
    out.patchwork_betti = homology_dims(chain_complex(s, false));
    out.projective_space_profile.assign(m.rank, 1);
    out.projective_space_match = (out.patchwork_betti == out.projective_space_profile);

    out.sphere_profile = sphere_betti_profile(m.rank - 2);
    out.sphere_match = true;
    for (const auto& t : topes(om)) {
        auto lv = las_vergnas_lattice(om, t);
        auto betti = simplicial_betti_gf2(order_complex(proper_part(lv)));
        out.lv_betti.push_back(betti);
        out.sphere_match = out.sphere_match && (betti == out.sphere_profile);
    }

    // empirical check: BM homology of the open fan concentrated in top degree
    for (int p = 0; p <= bw.complex.dim; ++p) {
        auto h = homology_dims(chain_complex(build_Fp(bw.complex, p), true));
        for (int q = 0; q < bw.complex.dim; ++q)
            if (h[q] != 0) out.bm_top_concentrated = false;
    }
    return out;
}

} // namespace troppatch
