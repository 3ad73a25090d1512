#include "intermap/harness/experiments.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>

#include "intermap/fft.hpp"
#include "intermap/harness/pool.hpp"
#include "intermap/isrm.hpp"
#include "intermap/map_operator.hpp"
#include "intermap/observables.hpp"
#include "intermap/spectral.hpp"

namespace intermap::harness {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct Histogram {
    std::vector<double> centers;
    std::vector<double> densities;
};

Histogram linear_histogram(const std::vector<double>& xs, double lo, double hi,
                           int bins) {
    Histogram h;
    const double width = (hi - lo) / bins;
    std::vector<std::size_t> counts(bins, 0);
    std::size_t in_range = 0;
    for (const double x : xs) {
        if (x < lo || x >= hi) continue;
        const int b = std::min(bins - 1, static_cast<int>((x - lo) / width));
        ++counts[b];
        ++in_range;
    }
    for (int b = 0; b < bins; ++b) {
        h.centers.push_back(lo + (b + 0.5) * width);
        h.densities.push_back(
            in_range == 0
                ? 0.0
                : static_cast<double>(counts[b]) /
                      (static_cast<double>(in_range) * width));
    }
    return h;
}

/// Logarithmic bins; densities normalized to unit integral in linear x.
Histogram log10_histogram(const std::vector<double>& xs, double lo_exp,
                          double hi_exp, int bins) {
    Histogram h;
    const double step = (hi_exp - lo_exp) / bins;
    std::vector<std::size_t> counts(bins, 0);
    std::size_t in_range = 0;
    for (const double x : xs) {
        if (x <= 0.0) continue;
        const double e = std::log10(x);
        if (e < lo_exp || e >= hi_exp) continue;
        const int b = std::min(bins - 1, static_cast<int>((e - lo_exp) / step));
        ++counts[b];
        ++in_range;
    }
    for (int b = 0; b < bins; ++b) {
        const double left = std::pow(10.0, lo_exp + b * step);
        const double right = std::pow(10.0, lo_exp + (b + 1) * step);
        h.centers.push_back(std::pow(10.0, lo_exp + (b + 0.5) * step));
        h.densities.push_back(
            in_range == 0
                ? 0.0
                : static_cast<double>(counts[b]) /
                      (static_cast<double>(in_range) * (right - left)));
    }
    return h;
}

std::function<double(double)> semi_poisson_cdf_fn(double beta) {
    return [beta](double s) { return semi_poisson_cdf(beta, s); };
}

/// Unfolded spacings of both desymmetrized blocks, even first.
std::pair<std::vector<double>, std::vector<double>> block_spacings(
    const MapSpec& spec) {
    const TaggedUnitary u = build_unitary_position(spec);
    const SymmetryBlocks blocks = desymmetrize(u);
    const std::vector<double> even = eigenphases(blocks.u_even);
    const std::vector<double> odd = eigenphases(blocks.u_odd);
    return {unfold_spacings(even).s, unfold_spacings(odd).s};
}

ComplexMatrix left_dft(const ComplexMatrix& v, bool adjoint) {
    ComplexMatrix w = dft_matrix(v.rows());
    return adjoint ? matmul(w.adjoint(), v) : matmul(w, v);
}

}  // namespace

ExperimentResult run_spacing(const ExperimentConfig& cfg) {
    if (cfg.variant != Variant::deterministic) {
        throw ConfigError("spacing experiment is deterministic only; "
                          "use isrm_stats for ensembles");
    }
    set_dense_qubit_cap(cfg.dense_cap);
    ExperimentResult result{ResultTable({"alpha", "N", "block", "s_bin_center",
                                         "density", "ks_sp", "ks_poisson",
                                         "ks_coe"}),
                            {}};
    const MapSpec base = cfg.spec_for(cfg.n_q);
    const std::int64_t n_dim = base.dim();

    const std::array<Alpha, 2> alphas = {base.alpha, base.alpha.one_minus()};
    std::array<std::pair<std::vector<double>, std::vector<double>>, 2> parts;
    parallel_for_index(2, cfg.workers, [&](std::size_t i) {
        MapSpec spec = base;
        spec.alpha = alphas[i];
        parts[i] = block_spacings(spec);
    });
    std::vector<double> pooled;
    for (const auto& [even, odd] : parts) {
        pooled.insert(pooled.end(), even.begin(), even.end());
        pooled.insert(pooled.end(), odd.begin(), odd.end());
    }

    const auto beta = predicted_beta(base.alpha, n_dim, base.variant);
    if (!beta) {
        result.warnings.push_back(
            "spacing: no semi-Poisson prediction for alpha = " +
            base.alpha.to_string() + ", N = " + std::to_string(n_dim) +
            " (a*N != +-1 mod b or irrational); ks_sp is NaN");
    }
    const double ks_sp =
        beta ? ks_distance(pooled, semi_poisson_cdf_fn(*beta)) : kNan;
    const double ks_p = ks_distance(pooled, poisson_cdf);
    const double ks_c = ks_distance(pooled, wigner_coe_cdf);

    const Histogram hist = linear_histogram(pooled, 0.0, 6.0, 60);
    for (std::size_t b = 0; b < hist.centers.size(); ++b) {
        result.table.add_row({base.alpha.to_string(), n_dim, "pooled",
                              hist.centers[b], hist.densities[b], ks_sp, ks_p,
                              ks_c});
    }
    result.table.sort_rows(4);
    result.table.set_provenance(base.hash(), cfg.master_seed);
    return result;
}

ExperimentResult run_isrm_stats(const ExperimentConfig& cfg) {
    if (cfg.variant == Variant::deterministic) {
        throw ConfigError("isrm_stats requires an ISRM variant");
    }
    set_dense_qubit_cap(cfg.dense_cap);
    ExperimentResult result{
        ResultTable({"alpha", "N", "variant", "s_bin_center", "density",
                     "ks_sp", "ks_poisson", "ks_coe", "ks_cue"}),
        {}};
    const MapSpec base = cfg.spec_for(cfg.n_q);
    const std::int64_t n_dim = base.dim();

    std::vector<std::vector<double>> per_realization(cfg.ensemble_size);
    parallel_for_index(cfg.ensemble_size, cfg.workers, [&](std::size_t k) {
        const TaggedUnitary u =
            build_isrm_from_spec(base, RepresentationTag::momentum_p, k);
        per_realization[k] = unfold_spacings(eigenphases(u.matrix)).s;
    });
    std::vector<double> pooled;
    for (const auto& s : per_realization) {
        pooled.insert(pooled.end(), s.begin(), s.end());
    }

    const auto beta = predicted_beta(base.alpha, n_dim, base.variant);
    if (!beta) {
        result.warnings.push_back(
            "isrm_stats: no semi-Poisson prediction for alpha = " +
            base.alpha.to_string() + ", N = " + std::to_string(n_dim) +
            "; ks_sp is NaN");
    }
    const double ks_sp =
        beta ? ks_distance(pooled, semi_poisson_cdf_fn(*beta)) : kNan;
    const Histogram hist = linear_histogram(pooled, 0.0, 6.0, 60);
    for (std::size_t b = 0; b < hist.centers.size(); ++b) {
        result.table.add_row({base.alpha.to_string(), n_dim,
                              variant_name(base.variant), hist.centers[b],
                              hist.densities[b], ks_sp,
                              ks_distance(pooled, poisson_cdf),
                              ks_distance(pooled, wigner_coe_cdf),
                              ks_distance(pooled, wigner_cue_cdf)});
    }
    result.table.sort_rows(4);
    result.table.set_provenance(base.hash(), cfg.master_seed);
    return result;
}

ExperimentResult run_formfactor(const ExperimentConfig& cfg) {
    if (cfg.variant != Variant::deterministic) {
        throw ConfigError("formfactor experiment is deterministic only");
    }
    set_dense_qubit_cap(cfg.dense_cap);
    ExperimentResult result{
        ResultTable({"alpha", "N", "n", "re_t", "im_t", "kappa_re", "kappa_im",
                     "ff", "re_ts", "im_ts", "re_diff", "im_diff",
                     "re_scatter", "im_scatter"}),
        {}};
    const std::vector<int> qubits = cfg.qubit_counts();
    const std::int64_t window = cfg.kappa_window();

    struct PerN {
        TraceSeries full;
        TraceSeries s_weighted;  // Tr(S U^n) = Tr B_even^n - Tr B_odd^n
        std::vector<cdouble> scatter;
    };
    std::vector<PerN> per_n(qubits.size());
    parallel_for_index(qubits.size(), cfg.workers, [&](std::size_t i) {
        const MapSpec spec = cfg.spec_for(qubits[i]);
        const TaggedUnitary u = build_unitary_position(spec);
        const SymmetryBlocks blocks = desymmetrize(u);
        const TraceSeries te = trace_series(eigenphases(blocks.u_even), window);
        const TraceSeries to = trace_series(eigenphases(blocks.u_odd), window);
        PerN& out = per_n[i];
        out.full.dim = te.dim + to.dim;
        out.s_weighted.dim = out.full.dim;
        out.full.t.resize(te.t.size());
        out.s_weighted.t.resize(te.t.size());
        for (std::size_t n = 0; n < te.t.size(); ++n) {
            out.full.t[n] = te.t[n] + to.t[n];
            out.s_weighted.t[n] = te.t[n] - to.t[n];
        }
        if (cfg.scattering_check) {
            const TaggedUnitary up = build_unitary(spec);
            const EigenSystem eig =
                eigensystem(up.matrix, spec.canonical_encoding());
            for (std::int64_t n = 1; n <= window; ++n) {
                out.scatter.push_back(scattering_trace(eig, n));
            }
        }
    });

    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const MapSpec spec = cfg.spec_for(qubits[i]);
        const PerN& p = per_n[i];
        const KappaEstimate kappa = kappa_estimate(p.full, window);
        for (std::int64_t n = 1; n <= window; ++n) {
            const cdouble t = p.full.t[static_cast<std::size_t>(n)];
            const cdouble ts = p.s_weighted.t[static_cast<std::size_t>(n)];
            const cdouble diff = t - ts;
            const cdouble sc =
                cfg.scattering_check
                    ? p.scatter[static_cast<std::size_t>(n - 1)]
                    : cdouble{kNan, kNan};
            result.table.add_row({spec.alpha.to_string(), spec.dim(), n,
                                  t.real(), t.imag(), kappa.kappa.real(),
                                  kappa.kappa.imag(), kappa.form_factor,
                                  ts.real(), ts.imag(), diff.real(),
                                  diff.imag(), sc.real(), sc.imag()});
        }
    }
    result.table.sort_rows(3);
    result.table.set_provenance(cfg.spec_for(cfg.n_q).hash(), cfg.master_seed);
    return result;
}

ExperimentResult run_iterates(const ExperimentConfig& cfg) {
    set_dense_qubit_cap(cfg.dense_cap);
    ExperimentResult result{
        ResultTable({"variant", "representation", "window_lo", "window_hi",
                     "bin_center", "density", "stat_kind"}),
        {}};
    const MapSpec base = cfg.spec_for(cfg.n_q);
    const bool det = base.variant == Variant::deterministic;
    std::vector<std::pair<std::int64_t, std::int64_t>> windows = cfg.windows;
    if (windows.empty()) {
        windows = det ? decltype(windows){{1000, 1100}, {2000, 2100},
                                          {100000, 100100}}
                      : decltype(windows){{1000, 1001}, {2000, 2001},
                                          {100000, 100001}};
    }

    struct Pools {
        std::vector<double> intensity_p;
        std::vector<double> intensity_q;
        std::vector<double> q_p;
        std::vector<double> q_q;
    };
    std::vector<Pools> per_window(windows.size());

    const auto collect = [](Pools& pool, const ComplexMatrix& m_p,
                            const ComplexMatrix& m_q, int register_qubits) {
        const std::size_t dim = m_p.rows();
        const double scale = static_cast<double>(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            StateVector col_p(dim);
            StateVector col_q(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                col_p[i] = m_p.at(i, j);
                col_q[i] = m_q.at(i, j);
                pool.intensity_p.push_back(scale * std::norm(col_p[i]));
                pool.intensity_q.push_back(scale * std::norm(col_q[i]));
            }
            pool.q_p.push_back(meyer_wallach_q(col_p, register_qubits));
            pool.q_q.push_back(meyer_wallach_q(col_q, register_qubits));
        }
    };

    if (det) {
        // One symmetry class: the even-q block, analyzed on n_q - 1 qubits.
        const TaggedUnitary u = build_unitary_position(base);
        const SymmetryBlocks blocks = desymmetrize(u);
        const EigenSystem eig =
            eigensystem(blocks.u_even, base.canonical_encoding() + ";block=even");
        const ComplexMatrix v_p = left_dft(eig.vectors, false);

        std::vector<std::pair<std::size_t, std::int64_t>> items;
        for (std::size_t w = 0; w < windows.size(); ++w) {
            for (std::int64_t n = windows[w].first; n < windows[w].second; ++n) {
                items.emplace_back(w, n);
            }
        }
        std::vector<Pools> per_item(items.size());
        parallel_for_index(items.size(), cfg.workers, [&](std::size_t i) {
            const auto [w, n] = items[i];
            (void)w;
            std::vector<cdouble> d(eig.dim());
            for (std::size_t k = 0; k < eig.dim(); ++k) {
                d[k] = std::polar(1.0, static_cast<double>(n) * eig.phases[k]);
            }
            ComplexMatrix vq = eig.vectors;
            vq.scale_cols(d);
            const ComplexMatrix m_q = matmul(vq, eig.vectors.adjoint());
            ComplexMatrix vp = v_p;
            vp.scale_cols(d);
            const ComplexMatrix m_p = matmul(vp, v_p.adjoint());
            collect(per_item[i], m_p, m_q, base.n_q - 1);
        });
        for (std::size_t i = 0; i < items.size(); ++i) {
            Pools& dst = per_window[items[i].first];
            const Pools& src = per_item[i];
            dst.intensity_p.insert(dst.intensity_p.end(),
                                   src.intensity_p.begin(),
                                   src.intensity_p.end());
            dst.intensity_q.insert(dst.intensity_q.end(),
                                   src.intensity_q.begin(),
                                   src.intensity_q.end());
            dst.q_p.insert(dst.q_p.end(), src.q_p.begin(), src.q_p.end());
            dst.q_q.insert(dst.q_q.end(), src.q_q.begin(), src.q_q.end());
        }
    } else {
        std::vector<std::vector<Pools>> per_real(
            cfg.ensemble_size, std::vector<Pools>(windows.size()));
        parallel_for_index(cfg.ensemble_size, cfg.workers, [&](std::size_t k) {
            const TaggedUnitary u =
                build_isrm_from_spec(base, RepresentationTag::momentum_p, k);
            const EigenSystem eig =
                eigensystem(u.matrix, base.canonical_encoding() + ";stream=" +
                                          std::to_string(k));
            const ComplexMatrix v_q = left_dft(eig.vectors, true);
            for (std::size_t w = 0; w < windows.size(); ++w) {
                for (std::int64_t n = windows[w].first; n < windows[w].second;
                     ++n) {
                    std::vector<cdouble> d(eig.dim());
                    for (std::size_t j = 0; j < eig.dim(); ++j) {
                        d[j] = std::polar(
                            1.0, static_cast<double>(n) * eig.phases[j]);
                    }
                    ComplexMatrix vp = eig.vectors;
                    vp.scale_cols(d);
                    const ComplexMatrix m_p =
                        matmul(vp, eig.vectors.adjoint());
                    ComplexMatrix vq = v_q;
                    vq.scale_cols(d);
                    const ComplexMatrix m_q = matmul(vq, v_q.adjoint());
                    collect(per_real[k][w], m_p, m_q, base.n_q);
                }
            }
        });
        for (const auto& realization : per_real) {
            for (std::size_t w = 0; w < windows.size(); ++w) {
                Pools& dst = per_window[w];
                const Pools& src = realization[w];
                dst.intensity_p.insert(dst.intensity_p.end(),
                                       src.intensity_p.begin(),
                                       src.intensity_p.end());
                dst.intensity_q.insert(dst.intensity_q.end(),
                                       src.intensity_q.begin(),
                                       src.intensity_q.end());
                dst.q_p.insert(dst.q_p.end(), src.q_p.begin(), src.q_p.end());
                dst.q_q.insert(dst.q_q.end(), src.q_q.begin(), src.q_q.end());
            }
        }
    }

    for (std::size_t w = 0; w < windows.size(); ++w) {
        const auto& [lo, hi] = windows[w];
        const Pools& pool = per_window[w];
        const auto emit_intensity = [&](const std::vector<double>& ys,
                                        const std::string& rep) {
            const Histogram h = log10_histogram(ys, -4.0, 2.0, 60);
            for (std::size_t b = 0; b < h.centers.size(); ++b) {
                result.table.add_row({variant_name(base.variant), rep, lo, hi,
                                      h.centers[b], h.densities[b],
                                      "intensity"});
            }
        };
        const auto emit_q = [&](const std::vector<double>& qs,
                                const std::string& rep) {
            const Histogram h = linear_histogram(qs, 0.0, 1.0000001, 60);
            for (std::size_t b = 0; b < h.centers.size(); ++b) {
                result.table.add_row({variant_name(base.variant), rep, lo, hi,
                                      h.centers[b], h.densities[b], "Q"});
            }
        };
        emit_intensity(pool.intensity_p, "p");
        emit_intensity(pool.intensity_q, "q");
        emit_q(pool.q_p, "p");
        emit_q(pool.q_q, "q");
    }
    result.table.sort_rows(0);  // construction order is already canonical
    result.table.set_provenance(base.hash(), cfg.master_seed);
    return result;
}

ExperimentResult run_ipr(const ExperimentConfig& cfg) {
    set_dense_qubit_cap(cfg.dense_cap);
    ExperimentResult result{
        ResultTable({"variant", "alpha", "N", "series", "mean_xi", "std_xi",
                     "gamma", "residual"}),
        {}};
    std::vector<int> qubits = cfg.qubit_counts();
    if (qubits.size() == 1 && cfg.n_q_min == 0) {
        // IPR scaling needs an N range; default to 6..n_q.
        qubits.clear();
        for (int k = 6; k <= cfg.n_q; ++k) qubits.push_back(k);
    }

    std::vector<int> usable;
    for (const int n_q : qubits) {
        const MapSpec spec = cfg.spec_for(n_q);
        if (spec.alpha.is_rational() &&
            !predicted_beta(spec.alpha, spec.dim(), spec.variant)) {
            result.warnings.push_back(
                "ipr: skipping N = " + std::to_string(spec.dim()) +
                " (a*N != +-1 mod b for alpha = " + spec.alpha.to_string() +
                ")");
            continue;
        }
        usable.push_back(n_q);
    }

    struct SeriesStats {
        double mean = 0.0;
        double stdev = 0.0;
        std::size_t count = 0;
    };
    const auto stats_of = [](const std::vector<double>& xs) {
        SeriesStats st;
        st.count = xs.size();
        for (const double x : xs) st.mean += x;
        st.mean /= static_cast<double>(xs.size());
        double ss = 0.0;
        for (const double x : xs) ss += (x - st.mean) * (x - st.mean);
        st.stdev = std::sqrt(ss / static_cast<double>(xs.size()));
        return st;
    };

    std::vector<SeriesStats> eig_stats(usable.size());
    std::vector<SeriesStats> col_stats(usable.size());
    for (std::size_t i = 0; i < usable.size(); ++i) {
        const MapSpec spec = cfg.spec_for(usable[i]);
        const int ensemble =
            spec.variant == Variant::deterministic ? 1 : cfg.ensemble_size;
        std::vector<std::vector<double>> eig_iprs(ensemble);
        std::vector<std::vector<double>> col_iprs(ensemble);
        parallel_for_index(ensemble, cfg.workers, [&](std::size_t k) {
            const TaggedUnitary u =
                spec.variant == Variant::deterministic
                    ? build_unitary(spec)
                    : build_isrm_from_spec(spec,
                                           RepresentationTag::momentum_p, k);
            const EigenSystem eig = eigensystem(
                u.matrix,
                spec.canonical_encoding() + ";stream=" + std::to_string(k));
            const std::size_t dim = eig.dim();
            for (std::size_t j = 0; j < dim; ++j) {
                eig_iprs[k].push_back(ipr(eig.vectors.column(j)));
            }
            const ComplexMatrix power =
                matrix_power_dense(eig, cfg.column_iterate);
            for (std::size_t j = 0; j < dim; ++j) {
                col_iprs[k].push_back(ipr(power.column(j)));
            }
        });
        std::vector<double> eig_pool;
        std::vector<double> col_pool;
        for (int k = 0; k < ensemble; ++k) {
            eig_pool.insert(eig_pool.end(), eig_iprs[k].begin(),
                            eig_iprs[k].end());
            col_pool.insert(col_pool.end(), col_iprs[k].begin(),
                            col_iprs[k].end());
        }
        eig_stats[i] = stats_of(eig_pool);
        col_stats[i] = stats_of(col_pool);
    }

    const auto fit_series = [&](const std::vector<SeriesStats>& stats)
        -> std::pair<double, double> {
        if (usable.size() < 3) return {kNan, kNan};
        std::vector<ScalingPoint> points;
        for (std::size_t i = 0; i < usable.size(); ++i) {
            points.push_back({static_cast<std::size_t>(1)
                                  << usable[i],
                              stats[i].mean, stats[i].stdev, stats[i].count});
        }
        const ScalingSeries series = fit_power_law(points);
        return {series.gamma, series.residual};
    };
    const auto [gamma_eig, res_eig] = fit_series(eig_stats);
    const auto [gamma_col, res_col] = fit_series(col_stats);
    if (usable.size() < 3) {
        result.warnings.push_back(
            "ipr: fewer than 3 usable N points; gamma is NaN");
    }

    const MapSpec base = cfg.spec_for(cfg.n_q);
    for (std::size_t i = 0; i < usable.size(); ++i) {
        const std::int64_t n_dim = std::int64_t{1} << usable[i];
        result.table.add_row({variant_name(base.variant),
                              base.alpha.to_string(), n_dim, "eigvec",
                              eig_stats[i].mean, eig_stats[i].stdev, gamma_eig,
                              res_eig});
        result.table.add_row({variant_name(base.variant),
                              base.alpha.to_string(), n_dim, "column",
                              col_stats[i].mean, col_stats[i].stdev, gamma_col,
                              res_col});
    }
    result.table.sort_rows(4);
    result.table.set_provenance(base.hash(), cfg.master_seed);
    return result;
}

ExperimentResult run_circuit_verify(const ExperimentConfig& cfg) {
    set_dense_qubit_cap(cfg.dense_cap);
    ExperimentResult result{
        ResultTable({"n_q", "n_s", "kind", "total", "one_qubit", "two_qubit",
                     "counts_ok", "max_dev"}),
        {}};
    std::vector<int> qubits = cfg.qubit_counts();
    if (qubits.size() == 1 && cfg.n_q_min == 0) {
        qubits.clear();
        for (int k = 2; k <= cfg.n_q; ++k) qubits.push_back(k);
    }
    const int dense_limit = std::min(8, cfg.dense_cap);

    for (const int n_q : qubits) {
        const std::int64_t nq = n_q;
        MapSpec spec = cfg.spec_for(n_q);
        spec.variant = Variant::deterministic;

        const Circuit qft = build_qft(n_q);
        const GateCounts qft_counts = count_gates(qft);
        double qft_dev = kNan;
        if (n_q <= dense_limit) {
            qft_dev = max_abs_diff(circuit_unitary(qft),
                                   dft_matrix(std::size_t{1} << n_q));
        }
        const bool qft_ok =
            qft_counts.total == nq * (nq + 1) / 2 &&
            qft_counts.one_qubit == nq && !qft_counts.paper_convention;
        result.table.add_row({nq, std::int64_t{0}, "qft", qft_counts.total,
                              qft_counts.one_qubit, qft_counts.two_qubit,
                              std::int64_t{qft_ok ? 1 : 0}, qft_dev});

        const Circuit map_paper =
            build_map_circuit(spec, CountingMode::paper_faithful);
        const GateCounts mc = count_gates(map_paper);
        const bool map_ok = mc.total == 2 * nq * nq + 2 * nq &&
                            mc.two_qubit == 2 * nq * nq - nq;
        double map_dev = kNan;
        if (n_q <= dense_limit) {
            const ComplexMatrix dense =
                build_unitary_position(spec).matrix;
            const ComplexMatrix paper_u = circuit_unitary(map_paper);
            map_dev = max_abs_diff_up_to_phase(paper_u, dense);
            const Circuit map_opt =
                build_map_circuit(spec, CountingMode::optimized);
            map_dev = std::max(
                map_dev, max_abs_diff(paper_u, circuit_unitary(map_opt)));
        }
        result.table.add_row({nq, std::int64_t{0}, "map", mc.total,
                              mc.one_qubit, mc.two_qubit,
                              std::int64_t{map_ok ? 1 : 0}, map_dev});

        for (const int n_s : cfg.n_s_list) {
            RngStream rng(cfg.master_seed,
                          static_cast<std::uint64_t>(n_q) * 1000 +
                              static_cast<std::uint64_t>(n_s));
            const RandomCircuitSpec rcs =
                draw_random_circuit_spec(n_q, n_s, rng);
            const Circuit block = build_random_phase_circuit(rcs);
            const Circuit full = build_isrm_circuit(spec.alpha, rcs);
            const GateCounts fc = count_gates(full);
            const std::int64_t ns = n_s;
            const bool isrm_ok =
                static_cast<std::int64_t>(block.gates.size()) ==
                    3 * ns + nq &&
                fc.two_qubit == nq * nq - nq + 2 * ns &&
                fc.one_qubit == 4 * nq + ns;
            double isrm_dev = kNan;
            if (n_q <= std::min(6, dense_limit)) {
                const ComplexMatrix ideal =
                    build_isrm_unitary_position(phases_from_circuit(rcs),
                                                spec.alpha)
                        .matrix;
                isrm_dev = max_abs_diff(circuit_unitary(full), ideal);
            }
            result.table.add_row({nq, ns, "isrm", fc.total, fc.one_qubit,
                                  fc.two_qubit, std::int64_t{isrm_ok ? 1 : 0},
                                  isrm_dev});
        }
    }
    result.table.sort_rows(3);
    result.table.set_provenance(cfg.spec_for(cfg.n_q).hash(), cfg.master_seed);
    return result;
}

std::string run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult result = [&cfg]() {
        if (cfg.experiment == "spacing") return run_spacing(cfg);
        if (cfg.experiment == "formfactor") return run_formfactor(cfg);
        if (cfg.experiment == "iterates") return run_iterates(cfg);
        if (cfg.experiment == "ipr") return run_ipr(cfg);
        if (cfg.experiment == "circuit_verify") return run_circuit_verify(cfg);
        if (cfg.experiment == "isrm_stats") return run_isrm_stats(cfg);
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    }();
    for (const std::string& warning : result.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    std::filesystem::create_directories(cfg.out_dir);
    const std::string csv_name = cfg.experiment + ".csv";
    const std::string csv_path =
        (std::filesystem::path(cfg.out_dir) / csv_name).string();
    result.table.write_csv(csv_path);

    const std::string plot_path =
        (std::filesystem::path(cfg.out_dir) / (cfg.experiment + ".gnuplot"))
            .string();
    if (cfg.experiment == "spacing" || cfg.experiment == "isrm_stats") {
        write_plot_script(plot_path, csv_name, "spacing distribution", "s",
                          "P(s)", {{4, 5}});
    } else if (cfg.experiment == "formfactor") {
        write_plot_script(plot_path, csv_name, "trace series", "n", "Re Tr U^n",
                          {{3, 4}});
    } else if (cfg.experiment == "iterates") {
        write_plot_script(plot_path, csv_name, "iterate distributions",
                          "bin center", "density", {{5, 6}}, true);
    } else if (cfg.experiment == "ipr") {
        write_plot_script(plot_path, csv_name, "IPR scaling", "N", "<xi>",
                          {{3, 5}}, true);
    } else {
        write_plot_script(plot_path, csv_name, "circuit verification", "n_q",
                          "max deviation", {{1, 8}});
    }
    return csv_path;
}

}  // namespace intermap::harness
