#include "fracperc/estimators.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracperc/crossing.hpp"
#include "fracperc/dimension.hpp"
#include "fracperc/interface.hpp"
#include "fracperc/parallel.hpp"
#include "fracperc/serialize.hpp"

namespace fracperc {

std::vector<ThetaPoint> estimate_theta(const ExperimentPlan& plan) {
    plan.validate();
    const std::vector<double>& ps = plan.p_grid;
    const std::vector<int>& ns = plan.n_grid;
    int n_max = *std::max_element(ns.begin(), ns.end());

    std::vector<std::vector<std::uint8_t>> hit(
        plan.trials, std::vector<std::uint8_t>(ps.size() * ns.size(), 0));

    parallel_for(plan.trials, [&](std::uint64_t t) {
        std::uint64_t tseed = derive_trial_seed(plan.seed, t);
        for (std::size_t pi = 0; pi < ps.size(); ++pi) {
            ProcessParams params{plan.N, plan.d, ps[pi], tseed};
            auto levels = generate_levels(params, n_max);
            for (std::size_t ni = 0; ni < ns.size(); ++ni) {
                if (left_right_crossing(levels[static_cast<std::size_t>(ns[ni] - 1)]))
                    hit[t][pi * ns.size() + ni] = 1;
            }
        }
    });

    std::vector<ThetaPoint> out;
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        for (std::size_t ni = 0; ni < ns.size(); ++ni) {
            ThetaPoint pt;
            pt.p = ps[pi];
            pt.n = ns[ni];
            pt.trials = plan.trials;
            for (std::uint64_t t = 0; t < plan.trials; ++t)
                pt.successes += hit[t][pi * ns.size() + ni];
            pt.report.name = "theta";
            pt.report.estimate = static_cast<double>(pt.successes) / static_cast<double>(plan.trials);
            pt.report.ci = wilson_interval(pt.successes, pt.trials, 0.99);
            pt.report.samples = pt.trials;
            pt.report.seed = plan.seed;
            pt.report.metadata = {{"p", pt.p}, {"n", pt.n}};
            out.push_back(std::move(pt));
        }
    }
    return out;
}

RectangleFamily RectangleFamily::well_separated(int k, double width, double sigma) {
    if (k < 1) throw std::invalid_argument("family: k must be >= 1");
    if (!(width > 0) || !(sigma > 1))
        throw std::invalid_argument("family: needs width > 0 and sigma > 1");
    RectangleFamily fam;
    fam.sigma = sigma;
    double length = sigma * width;
    double diam = width * std::sqrt(1.0 + sigma * sigma);
    double gap = 1.10 * diam;  // strict separation with headroom
    double total = k * width + (k - 1) * gap;
    if (length > 0.96 || total > 0.96)
        throw std::invalid_argument("family: rectangles do not fit the unit square");
    double y = (1.0 - total) / 2.0;
    double x0 = (1.0 - length) / 2.0;
    for (int i = 0; i < k; ++i) {
        fam.rects.push_back(Rect{x0, y, x0 + length, y + width});
        y += width + gap;
    }
    fam.validate();
    return fam;
}

void RectangleFamily::validate() {
    if (rects.empty()) throw std::invalid_argument("family: empty");
    min_separation = std::numeric_limits<double>::infinity();
    max_diameter = 0;
    for (const Rect& r : rects) {
        if (r.degenerate()) throw std::invalid_argument("family: degenerate rectangle");
        if (r.x0 < 0 || r.y0 < 0 || r.x1 > 1 || r.y1 > 1)
            throw std::invalid_argument("family: rectangle outside the unit square");
        max_diameter = std::max(max_diameter, std::hypot(r.width(), r.height()));
    }
    for (std::size_t i = 0; i < rects.size(); ++i) {
        for (std::size_t j = i + 1; j < rects.size(); ++j) {
            const Rect &a = rects[i], &b = rects[j];
            double dx = std::max({a.x0 - b.x1, b.x0 - a.x1, 0.0});
            double dy = std::max({a.y0 - b.y1, b.y0 - a.y1, 0.0});
            min_separation = std::min(min_separation, std::hypot(dx, dy));
        }
    }
    if (rects.size() > 1 && min_separation < max_diameter)
        throw std::invalid_argument("family: rectangles are not well-separated");
}

DisjointTailReport estimate_disjoint_crossing_tail(const ProcessParams& params, int n,
                                                   std::uint64_t trials, Vec2 center, double R,
                                                   const std::vector<double>& r_values,
                                                   const std::vector<int>& ks,
                                                   const GenerateOptions& opt) {
    params.validate();
    if (trials < 1) throw std::invalid_argument("trials: must be >= 1");
    if (r_values.empty() || ks.empty()) throw std::invalid_argument("tail: empty grids");
    for (double r : r_values)
        if (!(r > 0 && r < R)) throw std::invalid_argument("tail: need 0 < r < R");

    DisjointTailReport rep;
    rep.p = params.p;
    rep.n = n;
    rep.trials = trials;
    rep.center = center;
    rep.R = R;
    rep.r_values = r_values;
    rep.counts.assign(r_values.size(), std::vector<std::uint16_t>(trials, 0));

    parallel_for(trials, [&](std::uint64_t t) {
        ProcessParams tp = params;
        tp.seed = derive_trial_seed(params.seed, t);
        auto config = generate_level(tp, n, opt);
        auto faces = trace_interfaces(config);
        AnnulusCrossingIndex index(faces);
        for (std::size_t ri = 0; ri < r_values.size(); ++ri) {
            AnnulusSpec a{center, r_values[ri], R};
            int c = index.count(a);
            rep.counts[ri][t] = static_cast<std::uint16_t>(std::min(c, 65535));
        }
    });

    for (int k : ks) {
        TailCurve curve;
        curve.k = k;
        std::vector<double> xs, ys;
        for (std::size_t ri = 0; ri < r_values.size(); ++ri) {
            std::uint64_t succ = 0;
            for (std::uint64_t t = 0; t < trials; ++t)
                if (static_cast<int>(rep.counts[ri][t]) >= k) ++succ;
            curve.ratio.push_back(r_values[ri] / R);
            curve.successes.push_back(succ);
            if (succ >= 5 && succ < trials) {
                xs.push_back(std::log(r_values[ri] / R));
                ys.push_back(std::log(static_cast<double>(succ) / static_cast<double>(trials)));
            }
        }
        if (xs.size() >= 3) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                sx += xs[i];
                sy += ys[i];
                sxx += xs[i] * xs[i];
                sxy += xs[i] * ys[i];
            }
            double m = static_cast<double>(xs.size());
            curve.lambda = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            curve.reliable = true;
        }
        rep.curves.push_back(std::move(curve));
    }
    return rep;
}

REpsilonKReport sample_r_epsilon_k(const ProcessParams& params, int n, std::uint64_t trials,
                                   double epsilon, int k, const GenerateOptions& opt) {
    params.validate();
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon: must be > 0");
    if (k < 1) throw std::invalid_argument("k: must be >= 1");
    if (trials < 1) throw std::invalid_argument("trials: must be >= 1");

    REpsilonKReport rep;
    rep.epsilon = epsilon;
    rep.k = k;
    rep.n = n;

    // centres on the N^-ceil(n/2) lattice; radii log-spaced; only annuli
    // whose outer box stays inside the unit square are tested
    double spacing = 1.0;
    for (int i = 0; i < (n + 1) / 2; ++i) spacing /= params.N;
    double h = 1.0;
    for (int i = 0; i < n; ++i) h /= params.N;

    std::vector<double> r_grid;
    double r_lo = std::max(4.0 * h, 1e-3);
    double r_hi = 0.5;
    int r_steps = 16;
    for (int i = 0; i < r_steps; ++i)
        r_grid.push_back(r_lo * std::pow(r_hi / r_lo, static_cast<double>(i) / (r_steps - 1)));
    rep.centers_spacing_r_grid.push_back(spacing);
    rep.centers_spacing_r_grid.insert(rep.centers_spacing_r_grid.end(), r_grid.begin(),
                                      r_grid.end());

    rep.samples.assign(trials, 1.0);
    parallel_for(trials, [&](std::uint64_t t) {
        ProcessParams tp = params;
        tp.seed = derive_trial_seed(params.seed, t);
        auto config = generate_level(tp, n, opt);
        auto faces = trace_interfaces(config);
        AnnulusCrossingIndex index(faces);
        for (double r : r_grid) {  // ascending: the first hit is the infimum
            double inner = std::pow(r, 1.0 + epsilon);
            if (inner >= r) continue;
            bool found = false;
            for (double cx = std::ceil((r / 2) / spacing) * spacing; cx <= 1 - r / 2 && !found;
                 cx += spacing) {
                for (double cy = std::ceil((r / 2) / spacing) * spacing; cy <= 1 - r / 2 && !found;
                     cy += spacing) {
                    AnnulusSpec a{{cx, cy}, inner, r};
                    if (index.count(a) >= k) found = true;
                }
            }
            if (found) {
                rep.samples[t] = r;
                break;
            }
        }
    });
    return rep;
}

H2Report h2_experiment(const ProcessParams& params, int n, std::uint64_t trials,
                       const RectangleFamily& family_in, const GenerateOptions& opt) {
    params.validate();
    RectangleFamily family = family_in;
    family.validate();
    if (trials < 1) throw std::invalid_argument("trials: must be >= 1");
    const std::size_t k = family.rects.size();

    std::vector<std::vector<std::uint8_t>> crossed(trials, std::vector<std::uint8_t>(k, 0));
    parallel_for(trials, [&](std::uint64_t t) {
        ProcessParams tp = params;
        tp.seed = derive_trial_seed(params.seed, t);
        auto config = generate_level(tp, n, opt);
        auto faces = trace_interfaces(config);
        for (std::size_t i = 0; i < k; ++i)
            if (rect_interface_crossings(faces, family.rects[i], 1) >= 1) crossed[t][i] = 1;
    });

    H2Report rep;
    rep.p = params.p;
    rep.n = n;
    rep.trials = trials;
    rep.individual.assign(k, 0.0);
    std::uint64_t joint = 0;
    std::vector<std::uint64_t> ind(k, 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        bool all = true;
        for (std::size_t i = 0; i < k; ++i) {
            if (crossed[t][i])
                ++ind[i];
            else
                all = false;
        }
        if (all) ++joint;
    }
    for (std::size_t i = 0; i < k; ++i)
        rep.individual[i] = static_cast<double>(ind[i]) / static_cast<double>(trials);
    rep.joint = static_cast<double>(joint) / static_cast<double>(trials);
    rep.rho_hat = *std::max_element(rep.individual.begin(), rep.individual.end());
    rep.product_bound = std::pow(rep.rho_hat, static_cast<double>(k));

    rep.joint_report.name = "h2_joint";
    rep.joint_report.estimate = rep.joint;
    rep.joint_report.ci = wilson_interval(joint, trials, 0.95);
    rep.joint_report.samples = trials;
    rep.joint_report.seed = params.seed;

    // bound check with the CI slack: joint must not exceed the product of the
    // (upper) individual estimates
    double rho_hi = 0;
    for (std::size_t i = 0; i < k; ++i)
        rho_hi = std::max(rho_hi, wilson_interval(ind[i], trials, 0.95).hi);
    rep.joint_below_product = rep.joint_report.ci.lo <= std::pow(rho_hi, static_cast<double>(k));
    rep.joint_report.metadata = {{"rho_hat", rep.rho_hat},
                                 {"product_bound", rep.product_bound},
                                 {"rho_hi_95", rho_hi},
                                 {"individual", rep.individual}};
    return rep;
}

std::vector<CellIndex> blocking_set(const ProcessParams& params, const Rect& rect, int axis,
                                    int m) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("axis: must be 1 or 2");
    if (rect.degenerate()) throw std::invalid_argument("rect: degenerate rectangle");
    std::uint64_t side = grid_side(params.N, m);
    double h = 1.0 / static_cast<double>(side);

    // one full short-direction column of level-m cells at the rectangle's
    // long-axis midpoint; every long black path must use one of them
    double mid = axis == 1 ? (rect.x0 + rect.x1) / 2 : (rect.y0 + rect.y1) / 2;
    auto col = static_cast<std::int64_t>(std::floor(mid / h)) + 1;
    col = std::clamp<std::int64_t>(col, 1, static_cast<std::int64_t>(side));

    double short_lo = axis == 1 ? rect.y0 : rect.x0;
    double short_hi = axis == 1 ? rect.y1 : rect.x1;
    std::vector<CellIndex> cells;
    for (std::int64_t j = 1; j <= static_cast<std::int64_t>(side); ++j) {
        double lo = (j - 1) * h, hi = j * h;
        if (lo > short_hi || hi < short_lo) continue;
        CellIndex cell;
        cell.level = m;
        if (axis == 1)
            cell.k = {static_cast<Coord>(col), static_cast<Coord>(j)};
        else
            cell.k = {static_cast<Coord>(j), static_cast<Coord>(col)};
        cells.push_back(std::move(cell));
    }
    return cells;
}

namespace {

std::string csv_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void write_file(const std::string& path, const std::string& content,
                std::vector<std::string>& files) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("plan: cannot write " + path);
    out << content;
    files.push_back(path);
}

}  // namespace

PlanOutcome run_plan(const ExperimentPlan& plan) {
    plan.validate();
    std::filesystem::create_directories(plan.output_dir);
    PlanOutcome outcome;
    nlohmann::json reports = nlohmann::json::object();

    auto out_path = [&](const std::string& name) {
        return (std::filesystem::path(plan.output_dir) / name).string();
    };

    for (const std::string& est : plan.estimators) {
        try {
            if (est == "theta") {
                auto points = estimate_theta(plan);
                std::ostringstream csv;
                csv << "p,n,trials,successes,theta_hat,ci_lo,ci_hi,seed\n";
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& pt : points) {
                    csv << csv_double(pt.p) << ',' << pt.n << ',' << pt.trials << ','
                        << pt.successes << ',' << csv_double(pt.report.estimate) << ','
                        << csv_double(pt.report.ci.lo) << ',' << csv_double(pt.report.ci.hi)
                        << ',' << plan.seed << '\n';
                    arr.push_back(pt.report.to_json());
                }
                write_file(out_path("theta.csv"), csv.str(), outcome.files);
                reports["theta"] = arr;
            } else if (est == "phi") {
                std::ostringstream csv;
                csv << "p,n,trials,successes,phi_hat,ci_lo,ci_hi,seed\n";
                nlohmann::json arr = nlohmann::json::array();
                for (double p : plan.p_grid) {
                    for (int n : plan.n_grid) {
                        if (n < 2) continue;
                        auto rep = estimate_phi(plan.params_at(p), n, plan.trials);
                        csv << csv_double(p) << ',' << n << ',' << rep.samples << ','
                            << rep.metadata.at("successes").get<std::uint64_t>() << ','
                            << csv_double(rep.estimate) << ',' << csv_double(rep.ci.lo) << ','
                            << csv_double(rep.ci.hi) << ',' << plan.seed << '\n';
                        arr.push_back(rep.to_json());
                    }
                }
                write_file(out_path("phi.csv"), csv.str(), outcome.files);
                reports["phi"] = arr;
            } else if (est == "zn") {
                std::ostringstream csv;
                csv << "p,n,trials,mean_zn,expected,se,median_root,survivors,seed\n";
                nlohmann::json arr = nlohmann::json::array();
                for (double p : plan.p_grid) {
                    for (int n : plan.n_grid) {
                        auto rep = zn_statistics(plan.params_at(p), n, plan.trials);
                        csv << csv_double(p) << ',' << n << ',' << rep.samples << ','
                            << csv_double(rep.estimate) << ','
                            << csv_double(rep.metadata.at("expected_mean").get<double>()) << ','
                            << csv_double(rep.metadata.at("standard_error").get<double>()) << ','
                            << csv_double(rep.metadata.at("median_zn_root").get<double>()) << ','
                            << rep.metadata.at("survivors").get<std::uint64_t>() << ','
                            << plan.seed << '\n';
                        arr.push_back(rep.to_json());
                    }
                }
                write_file(out_path("zn.csv"), csv.str(), outcome.files);
                reports["zn"] = arr;
            } else if (est == "disjoint_tail") {
                if (plan.d != 2) throw std::invalid_argument("disjoint_tail: d must be 2");
                double R = plan.extras.value("annulus_R", 0.4);
                std::vector<int> ks = plan.extras.value("k_values", std::vector<int>{1, 2, 3});
                std::vector<double> rs;
                if (plan.extras.contains("r_values"))
                    rs = plan.extras.at("r_values").get<std::vector<double>>();
                else
                    for (int i = 0; i < 8; ++i)
                        rs.push_back(0.05 * std::pow(0.3 / 0.05, i / 7.0));
                std::ostringstream csv;
                csv << "p,n,k,r,ratio,trials,successes,prob,lambda,reliable\n";
                nlohmann::json arr = nlohmann::json::array();
                for (double p : plan.p_grid) {
                    for (int n : plan.n_grid) {
                        auto rep = estimate_disjoint_crossing_tail(
                            plan.params_at(p), n, plan.trials, {0.5, 0.5}, R, rs, ks);
                        for (const auto& curve : rep.curves) {
                            for (std::size_t ri = 0; ri < curve.ratio.size(); ++ri) {
                                csv << csv_double(p) << ',' << n << ',' << curve.k << ','
                                    << csv_double(rep.r_values[ri]) << ','
                                    << csv_double(curve.ratio[ri]) << ',' << rep.trials << ','
                                    << curve.successes[ri] << ','
                                    << csv_double(static_cast<double>(curve.successes[ri]) /
                                                  static_cast<double>(rep.trials))
                                    << ',' << csv_double(curve.lambda) << ','
                                    << (curve.reliable ? 1 : 0) << '\n';
                            }
                            arr.push_back({{"p", p},
                                           {"n", n},
                                           {"k", curve.k},
                                           {"lambda", curve.lambda},
                                           {"reliable", curve.reliable}});
                        }
                    }
                }
                write_file(out_path("disjoint_tail.csv"), csv.str(), outcome.files);
                reports["disjoint_tail"] = arr;
            } else if (est == "r_epsilon_k") {
                if (plan.d != 2) throw std::invalid_argument("r_epsilon_k: d must be 2");
                double eps = plan.extras.value("eps", 0.5);
                int k = plan.extras.value("k", 3);
                std::ostringstream csv;
                csv << "p,n,eps,k,trial,r_value\n";
                nlohmann::json arr = nlohmann::json::array();
                for (double p : plan.p_grid) {
                    for (int n : plan.n_grid) {
                        auto rep = sample_r_epsilon_k(plan.params_at(p), n, plan.trials, eps, k);
                        for (std::size_t t = 0; t < rep.samples.size(); ++t)
                            csv << csv_double(p) << ',' << n << ',' << csv_double(eps) << ','
                                << k << ',' << t << ',' << csv_double(rep.samples[t]) << '\n';
                        std::vector<double> sorted = rep.samples;
                        std::sort(sorted.begin(), sorted.end());
                        arr.push_back({{"p", p},
                                       {"n", n},
                                       {"eps", eps},
                                       {"k", k},
                                       {"q10", sorted[sorted.size() / 10]},
                                       {"median", sorted[sorted.size() / 2]}});
                    }
                }
                write_file(out_path("r_epsilon_k.csv"), csv.str(), outcome.files);
                reports["r_epsilon_k"] = arr;
            } else if (est == "h2") {
                if (plan.d != 2) throw std::invalid_argument("h2: d must be 2");
                int k = plan.extras.value("k", 3);
                double width = plan.extras.value("rect_width", 0.1);
                double sigma = plan.extras.value("sigma", 2.0);
                auto family = RectangleFamily::well_separated(k, width, sigma);
                std::ostringstream csv;
                csv << "p,n,k,trials,joint,rho_hat,product_bound,within_bound\n";
                nlohmann::json arr = nlohmann::json::array();
                for (double p : plan.p_grid) {
                    for (int n : plan.n_grid) {
                        auto rep = h2_experiment(plan.params_at(p), n, plan.trials, family);
                        csv << csv_double(p) << ',' << n << ',' << k << ',' << rep.trials << ','
                            << csv_double(rep.joint) << ',' << csv_double(rep.rho_hat) << ','
                            << csv_double(rep.product_bound) << ','
                            << (rep.joint_below_product ? 1 : 0) << '\n';
                        arr.push_back(rep.joint_report.to_json());
                    }
                }
                write_file(out_path("h2.csv"), csv.str(), outcome.files);
                reports["h2"] = arr;
            }
        } catch (const std::exception& e) {
            outcome.errors[est] = e.what();
        }
    }

    nlohmann::json manifest = {{"version", kToolVersion},
                               {"plan", plan.to_json()},
                               {"outputs", outcome.files},
                               {"reports", reports},
                               {"errors", outcome.errors}};
    std::ofstream mf(out_path("manifest.json"), std::ios::binary);
    mf << manifest.dump(2) << '\n';
    outcome.files.push_back(out_path("manifest.json"));
    outcome.manifest = std::move(manifest);
    return outcome;
}

}  // namespace fracperc
