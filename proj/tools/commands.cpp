#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>

#include <CLI11.hpp>

#include "io.hpp"
#include "twistor/cohomology.hpp"
#include "twistor/twistor_metric.hpp"
#include "worker_pool.hpp"

namespace twistorkit {

using namespace twistor;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const char* status(bool ok) { return ok ? "PASS" : "FAIL"; }

Json dims_to_json(const CohomologyDims& h) { return Json::array({h[0], h[1], h[2], h[3]}); }

template <class T>
struct Timed {
    T value;
    double seconds = 0;
};

template <class Task>
auto timed_map(std::size_t n, Task task) {
    return parallel_map(n, [&](std::size_t i) {
        const auto t0 = Clock::now();
        auto v = task(i);
        return Timed<decltype(v)>{std::move(v), seconds_since(t0)};
    });
}

template <class T>
void attach_timings(Json& report, const std::vector<Timed<T>>& items, Clock::time_point t0, const CommonOptions& c) {
    if (!c.timings) return;
    Json per_item = Json::array();
    for (const auto& it : items) per_item.push_back(it.seconds);
    report["timings"] = {{"total_seconds", seconds_since(t0)}, {"item_seconds", per_item}};
}

void ensure_out_dir(const CommonOptions& c) {
    if (!c.out_dir.empty()) std::filesystem::create_directories(c.out_dir);
}

std::string out_path(const CommonOptions& c, const std::string& name) {
    return (std::filesystem::path(c.out_dir) / name).string();
}

void emit(const Json& report, const CommonOptions& c, std::ostream& out) {
    const std::string text = report.dump(2) + "\n";
    out << text;
    if (!c.out_dir.empty()) {
        ensure_out_dir(c);
        write_file(out_path(c, "report.json"), text);
    }
}

std::string indexed_name(const char* stem, std::size_t i, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03zu.%s", stem, i, ext);
    return buf;
}

std::string csv(const Eigen::MatrixXd& m) {
    std::string s;
    char buf[40];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, k));
            if (k) s += ',';
            s += buf;
        }
        s += '\n';
    }
    return s;
}

Json summary(std::size_t passed, std::size_t failed, std::size_t invalid = 0) {
    Json s;
    s["items"] = passed + failed + invalid;
    s["passed"] = passed;
    s["failed"] = failed;
    if (invalid) s["invalid"] = invalid;
    s["status"] = failed == 0 && invalid == 0 ? "PASS" : "FAIL";
    return s;
}

int exit_code(std::size_t failed, std::size_t invalid) {
    if (invalid) return kInvalidObject;
    return failed ? kFail : kPass;
}

std::vector<CurveDocument> load_curves(const std::vector<std::string>& inputs) {
    std::vector<CurveDocument> docs;
    for (const auto& path : inputs) {
        try {
            docs.push_back(parse_curve(read_file(path)));
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        } catch (const InvalidObject& e) {
            throw InvalidObject(path + ": " + e.what());
        }
    }
    return docs;
}

Json stage(const char* name, const char* result) { return {{"name", name}, {"status", result}}; }

// Fibers over [1 : t] with t = (a + b i) / q, small integers.
std::vector<GaussianRational> random_fibers(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    std::vector<GaussianRational> t;
    for (std::size_t k = 0; k < count; ++k) {
        const int q = den(rng);
        t.emplace_back(mpq_class(num(rng), q), mpq_class(num(rng), q));
    }
    return t;
}

Json verify_curve(const CurveDocument& doc, const std::string& label, std::uint64_t fiber_seed, std::size_t fibers) {
    const AcmCurve c = make_curve(doc.matrix());
    const int r = c.r();
    Json item;
    item["input"] = label;
    item["r"] = r;
    item["d"] = c.d;
    item["g"] = c.g;
    Json stages = Json::array();
    std::string failed_stage;
    auto record = [&](const char* name, bool ok) {
        stages.push_back(stage(name, status(ok)));
        if (!ok && failed_stage.empty()) failed_stage = name;
    };

    record("base-avoidance", c.base_avoiding);
    const CertificationReport cert = certify_resolution(c);
    Json rows = Json::array();
    for (const auto& row : cert.rows) rows.push_back({{"k", row.k}, {"actual", row.actual}, {"predicted", row.predicted}});
    item["certification"] = rows;
    record("resolution", cert.passed);

    // Hilbert polynomial d k + 1 - g read off the top certified degree
    const auto& top = cert.rows.back();
    const long hp = static_cast<long>(monomial_count(4, top.k)) - static_cast<long>(top.actual);
    record("degree-genus", hp == static_cast<long>(c.d) * top.k + 1 - c.g);
    record("sigma-invariance", c.sigma_invariant);

    if (!c.certified()) {
        for (const char* name : {"cohomology", "ellia-stability", "normal-sections", "fibers"})
            stages.push_back(stage(name, "SKIPPED"));
    } else {
        Json table = Json::array();
        bool chi_ok = true;
        for (const auto& row : cohomology_table(c, r - 3, r + 1).rows) {
            const long chi = euler_characteristic_ideal(c, row.k);
            const auto& h = row.ideal;
            const long alt = static_cast<long>(h[0]) - static_cast<long>(h[1]) + static_cast<long>(h[2]) -
                             static_cast<long>(h[3]);
            chi_ok = chi_ok && alt == chi;
            table.push_back({{"k", row.k}, {"h", dims_to_json(h)}, {"chi", chi}, {"h0_OC", row.h0_OC}});
        }
        item["cohomology"] = table;
        record("cohomology", chi_ok);

        const bool ellia = ellia_stability_check(c);
        item["ellia_stability"] = ellia;
        record("ellia-stability", ellia);

        const std::size_t n0 = normal_sections(c, 0), n1 = normal_sections(c, -1);
        item["h0_N"] = n0;
        item["h0_N_minus1"] = n1;
        record("normal-sections", n0 == static_cast<std::size_t>(2 * r * (r + 1)) &&
                                      n1 == static_cast<std::size_t>(r * (r + 1)));

        Json fiber_items = Json::array();
        bool fibers_ok = true;
        for (const auto& t : random_fibers(fiber_seed, fibers)) {
            const FiberScheme f = restrict_to_fiber(c, t);
            const auto hf = fiber_hilbert_function(f);
            bool hf_ok = true;
            for (std::size_t k = 0; k < hf.size(); ++k) hf_ok = hf_ok && hf[k] == expected_fiber_hilbert(r, static_cast<int>(k));
            const bool stratum = stratum_check(f);
            fibers_ok = fibers_ok && f.length() == static_cast<std::size_t>(c.d) && hf_ok && stratum;
            fiber_items.push_back({{"t", t.to_string()}, {"length", f.length()}, {"hilbert", hf}, {"stratum", stratum}});
        }
        item["fibers"] = fiber_items;
        record("fibers", fibers_ok);
    }
    item["stages"] = stages;
    item["status"] = status(failed_stage.empty());
    if (!failed_stage.empty()) item["failed_stage"] = failed_stage;
    return item;
}

}  // namespace

int cmd_kronecker(const KroneckerOptions& o, const CommonOptions& c, std::ostream& out, std::ostream& err) {
    const auto t0 = Clock::now();
    std::vector<Pencil> pencils;
    for (const auto& path : o.inputs) {
        try {
            pencils.push_back(pencil_from_json(parse_json(read_file(path))));
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        } catch (const InvalidObject& e) {
            throw InvalidObject(path + ": " + e.what());
        }
    }
    const auto results = timed_map(pencils.size(), [&](std::size_t i) {
        const Pencil& p = pencils[i];
        Json item;
        item["input"] = o.inputs[i];
        item["r"] = p.r;
        try {
            const KroneckerReduction red = kronecker_reduce(p);
            const bool verified = satisfies_reduction(p, red);
            item["P"] = matrix_to_json(red.P);
            item["Q"] = matrix_to_json(red.Q);
            item["identity"] = red.P == ExactMatrix::identity(p.r + 1) && red.Q == ExactMatrix::identity(p.r);
            item["verified"] = verified;
            item["stabilizer_dimension"] = stabilizer_dimension(CanonicalPair::of(p.r));
            item["status"] = status(verified);
        } catch (const NonInjectivePencil& e) {
            item["witness"] = e.witness();
            item["status"] = "INVALID";
        }
        return item;
    });
    Json report;
    report["command"] = "kronecker";
    report["arguments"] = {{"inputs", o.inputs}};
    Json items = Json::array();
    std::size_t passed = 0, failed = 0, invalid = 0;
    for (const auto& r : results) {
        const std::string s = r.value["status"];
        if (s == "PASS") ++passed;
        else if (s == "INVALID") {
            ++invalid;
            err << r.value["input"].get<std::string>() << ": pencil is not injective, rank drops at "
                << r.value["witness"].get<std::string>() << "\n";
        } else ++failed;
        items.push_back(r.value);
    }
    report["items"] = items;
    report["summary"] = summary(passed, failed, invalid);
    attach_timings(report, results, t0, c);
    emit(report, c, out);
    return exit_code(failed, invalid);
}

int cmd_acm_verify(const AcmVerifyOptions& o, const CommonOptions& c, std::ostream& out, std::ostream&) {
    const auto t0 = Clock::now();
    const auto docs = load_curves(o.inputs);
    const auto results = timed_map(docs.size(), [&](std::size_t i) {
        return verify_curve(docs[i], o.inputs[i], chart_seed(o.seed, i), o.fibers);
    });
    Json report;
    report["command"] = "acm verify";
    report["arguments"] = {{"inputs", o.inputs}, {"seed", o.seed}, {"fibers", o.fibers}};
    Json items = Json::array();
    std::size_t passed = 0;
    for (const auto& r : results) {
        passed += r.value["status"] == "PASS";
        items.push_back(r.value);
    }
    report["items"] = items;
    report["summary"] = summary(passed, results.size() - passed);
    attach_timings(report, results, t0, c);
    emit(report, c, out);
    return exit_code(results.size() - passed, 0);
}

int cmd_acm_random(const AcmRandomOptions& o, const CommonOptions& c, std::ostream& out, std::ostream& err) {
    const auto t0 = Clock::now();
    struct Generated {
        std::optional<CurveDocument> doc;
        std::string warning;
    };
    const auto results = timed_map(o.count, [&](std::size_t i) {
        const std::uint64_t s = chart_seed(o.seed, i);
        Generated g;
        try {
            const AcmCurve curve = random_chart_curve(o.r, s);
            Json meta;
            meta["seed"] = s;
            meta["index"] = i;
            meta["label"] = "random sigma-invariant curve";
            g.doc = CurveDocument::of(curve.matrix, meta);
        } catch (const std::runtime_error& e) {
            g.warning = e.what();
        }
        return g;
    });
    ensure_out_dir(c);
    Json report;
    report["command"] = "acm random";
    report["arguments"] = {{"r", o.r}, {"count", o.count}, {"seed", o.seed}};
    Json items = Json::array();
    std::size_t passed = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const Generated& g = results[i].value;
        Json item;
        item["index"] = i;
        if (g.doc) {
            ++passed;
            item["seed"] = g.doc->metadata["seed"];
            if (c.out_dir.empty()) {
                item["document"] = to_json(*g.doc);
            } else {
                const std::string name = indexed_name("curve", i, "json");
                write_file(out_path(c, name), serialize(*g.doc));
                item["file"] = name;
            }
            item["status"] = "PASS";
        } else {
            item["warning"] = g.warning;
            item["status"] = "FAIL";
            err << "warning: item " << i << ": " << g.warning << "\n";
        }
        items.push_back(item);
    }
    report["items"] = items;
    report["summary"] = summary(passed, results.size() - passed);
    attach_timings(report, results, t0, c);
    emit(report, c, out);
    return exit_code(results.size() - passed, 0);
}

int cmd_rational(const RationalOptions& o, const CommonOptions& c, std::ostream& out, std::ostream& err) {
    const auto t0 = Clock::now();
    std::vector<std::pair<std::string, RationalCurveMap>> maps;
    std::size_t random_count = 0;
    if (!o.preset.empty()) {
        if (o.preset == "line") maps.emplace_back("line", line_map());
        else if (o.preset == "conic") maps.emplace_back("conic", conic_map());
        else maps.emplace_back("twisted-cubic", twisted_cubic_map());
    }
    for (const auto& path : o.inputs) {
        try {
            maps.emplace_back(path, map_from_json(parse_json(read_file(path))));
        } catch (const ParseError& e) {
            throw ParseError(path + ": " + e.what());
        } catch (const InvalidObject& e) {
            throw InvalidObject(path + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw InvalidObject(path + ": " + e.what());
        }
    }
    if (o.d) random_count = o.count;
    const std::size_t fixed = maps.size();

    struct Outcome {
        Json item;
        int kind = 0;  // 0 pass, 1 fail, 2 invalid
        std::optional<SplittingType> split;
    };
    const auto results = timed_map(fixed + random_count, [&](std::size_t i) {
        Outcome res;
        std::string label;
        RationalCurveMap f;
        if (i < fixed) {
            label = maps[i].first;
            f = maps[i].second;
        } else {
            const std::uint64_t s = chart_seed(o.seed, i - fixed);
            label = "random d=" + std::to_string(*o.d) + " seed=" + std::to_string(s);
            f = random_rational_curve(*o.d, s);
        }
        Json& item = res.item;
        item["label"] = label;
        item["map"] = to_json(f);
        const MapValidation v = validate_map(f);
        if (!v.valid()) {
            item["witness"] = v.witness;
            item["status"] = "INVALID";
            res.kind = 2;
            return res;
        }
        try {
            const SplittingType s = normal_splitting_type(f);
            const std::size_t primal = normal_sections_primal(f, 0);
            const bool ok = s.a + s.b == 4 * f.d - 2 && primal == static_cast<std::size_t>(s.a + s.b + 2);
            item["splitting"] = {s.a, s.b};
            item["stable"] = s.a == s.b && s.a == 2 * f.d - 1;
            item["h0_N"] = primal;
            item["status"] = status(ok);
            res.kind = ok ? 0 : 1;
            res.split = s;
        } catch (const SplittingProfileError& e) {
            item["error"] = e.what();
            item["status"] = "FAIL";
            res.kind = 1;
        }
        return res;
    });

    Json report;
    report["command"] = "rational";
    Json args;
    if (o.d) args["d"] = *o.d;
    if (!o.preset.empty()) args["preset"] = o.preset;
    if (!o.inputs.empty()) args["inputs"] = o.inputs;
    if (o.d) {
        args["count"] = o.count;
        args["seed"] = o.seed;
    }
    report["arguments"] = args;
    Json items = Json::array();
    std::size_t counts[3] = {0, 0, 0};
    std::map<SplittingType, std::size_t> histogram;
    for (const auto& r : results) {
        ++counts[r.value.kind];
        if (r.value.split) ++histogram[*r.value.split];
        if (r.value.kind == 2)
            err << r.value.item["label"].get<std::string>() << ": invalid map, "
                << r.value.item["witness"].get<std::string>() << "\n";
        items.push_back(r.value.item);
    }
    report["items"] = items;
    Json hist = Json::array();
    for (const auto& [s, n] : histogram) hist.push_back({{"a", s.a}, {"b", s.b}, {"count", n}});
    report["histogram"] = hist;
    report["summary"] = summary(counts[0], counts[1], counts[2]);
    attach_timings(report, results, t0, c);
    emit(report, c, out);
    return exit_code(counts[1], counts[2]);
}

int cmd_metric(const MetricOptions& o, const CommonOptions& c, std::ostream& out, std::ostream& err) {
    const auto t0 = Clock::now();
    const auto fibers = sample_fibers(o.fibers);
    struct ChartResult {
        std::uint64_t seed = 0;
        std::optional<HKFrame> frame;
        std::string error;
        std::optional<CurveDocument> doc;
    };
    const auto results = timed_map(o.count, [&](std::size_t i) {
        ChartResult res;
        res.seed = chart_seed(o.seed, i);
        const AcmCurve curve = random_chart_curve(o.r, res.seed);
        const FlatChart chart = o.skip_sigma_gauge ? raw_chart(curve) : normalize_to_flat_chart(curve);
        try {
            res.frame = extract_metric(chart, fibers);
        } catch (const ExtractionFailure& e) {
            res.error = e.what();
            res.doc = CurveDocument::of(curve.matrix, {{"seed", res.seed}, {"index", i}});
        }
        return res;
    });

    ensure_out_dir(c);
    MetricReport summary_report;
    summary_report.r = o.r;
    Json charts = Json::array();
    bool extraction_failed = false;
    double fit = 0, symmetry = 0, compatibility = 0, cross = 0, quaternion = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const ChartResult& res = results[i].value;
        Json item;
        item["index"] = i;
        item["seed"] = res.seed;
        if (!res.frame) {
            extraction_failed = true;
            Json bundle;
            bundle["seed"] = res.seed;
            bundle["error"] = res.error;
            bundle["chart"] = to_json(*res.doc);
            if (c.out_dir.empty()) {
                err << bundle.dump(2) << "\n";
            } else {
                const std::string name = indexed_name("failure", i, "json");
                write_file(out_path(c, name), bundle.dump(2) + "\n");
                item["reproduction"] = name;
            }
            err << "extraction failed for chart " << i << ": " << res.error << "\n";
            item["error"] = res.error;
            item["status"] = "EXTRACTION-FAILURE";
            charts.push_back(item);
            continue;
        }
        const HKFrame& f = *res.frame;
        item["signature"] = {f.signature.first, f.signature.second};
        item["fibers_used"] = f.fibers.size();
        item["fit_residual"] = f.fit_residual;
        item["symmetry_residual"] = f.symmetry_residual;
        item["compatibility_residual"] = f.compatibility_residual;
        item["cross_residual"] = f.cross_residual;
        item["quaternion_residual"] = f.quaternion_residual;
        fit = std::max(fit, f.fit_residual);
        symmetry = std::max(symmetry, f.symmetry_residual);
        compatibility = std::max(compatibility, f.compatibility_residual);
        cross = std::max(cross, f.cross_residual);
        quaternion = std::max(quaternion, f.quaternion_residual);
        if (!c.out_dir.empty()) {
            const std::string name = indexed_name("gram", i, "csv");
            write_file(out_path(c, name), csv(f.gram));
            item["gram"] = name;
        }
        summary_report.frames.push_back(f);
        summary_report.seeds.push_back(res.seed);
        charts.push_back(item);
    }
    summarize(summary_report);

    Json report;
    report["command"] = "metric";
    report["arguments"] = {{"r", o.r},
                           {"count", o.count},
                           {"seed", o.seed},
                           {"fibers", o.fibers},
                           {"skip_sigma_gauge", o.skip_sigma_gauge}};
    report["conventions"] = {{"omega_I", "Re(c1 / 2i)"},
                             {"omega_J", "Re((c0 - c2) / 2i)"},
                             {"omega_K", "-Re((c0 + c2) / 2)"},
                             {"gram", "-omega_I(X, I Y)"},
                             {"basis", "dA3 = E_ij, i E_ij row-major, dA4 = conj(G dA3 H)"}};
    report["dimension"] = 2 * o.r * (o.r + 1);
    report["charts"] = charts;
    Json s;
    s["charts"] = o.count;
    s["deviation"] = summary_report.deviation;
    s["threshold"] = summary_report.threshold;
    if (!summary_report.frames.empty()) {
        const auto sig = summary_report.frames.front().signature;
        s["signature"] = {sig.first, sig.second};
    }
    s["signature_constant"] = summary_report.signature_constant;
    s["max_fit_residual"] = fit;
    s["max_symmetry_residual"] = symmetry;
    s["max_compatibility_residual"] = compatibility;
    s["max_cross_residual"] = cross;
    s["max_quaternion_residual"] = quaternion;
    const bool passed = summary_report.passed && !extraction_failed;
    s["status"] = extraction_failed ? "EXTRACTION-FAILURE" : status(passed);
    report["summary"] = s;
    if (!c.out_dir.empty() && !summary_report.frames.empty())
        write_file(out_path(c, "gram_mean.csv"), csv(summary_report.mean_gram));
    attach_timings(report, results, t0, c);
    emit(report, c, out);
    if (extraction_failed) return kExtractionFailure;
    return passed ? kPass : kFail;
}

int cmd_cohomology_table(const CohomologyOptions& o, const CommonOptions& c, std::ostream& out, std::ostream& err) {
    const auto t0 = Clock::now();
    const auto docs = load_curves(o.inputs);
    const auto results = timed_map(docs.size(), [&](std::size_t i) {
        const AcmCurve curve = make_curve(docs[i].matrix());
        const int r = curve.r();
        Json item;
        item["input"] = o.inputs[i];
        item["r"] = r;
        if (!curve.certified()) {
            item["status"] = "INVALID";
            item["reason"] = curve.base_avoiding ? "resolution not certified" : "curve meets the base line";
            return item;
        }
        const int k_min = o.k_min.value_or(r - 3), k_max = o.k_max.value_or(r + 1);
        Json rows = Json::array();
        bool ok = true;
        for (const auto& row : cohomology_table(curve, k_min, k_max).rows) {
            const long chi = euler_characteristic_ideal(curve, row.k);
            const auto& h = row.ideal;
            ok = ok && static_cast<long>(h[0]) - static_cast<long>(h[1]) + static_cast<long>(h[2]) -
                               static_cast<long>(h[3]) ==
                           chi;
            rows.push_back({{"k", row.k}, {"h", dims_to_json(h)}, {"chi", chi}, {"h0_OC", row.h0_OC}});
        }
        item["rows"] = rows;
        item["status"] = status(ok);
        return item;
    });
    Json report;
    report["command"] = "cohomology table";
    Json args = {{"inputs", o.inputs}};
    if (o.k_min) args["kmin"] = *o.k_min;
    if (o.k_max) args["kmax"] = *o.k_max;
    report["arguments"] = args;
    Json items = Json::array();
    std::size_t passed = 0, failed = 0, invalid = 0;
    for (const auto& r : results) {
        const std::string s = r.value["status"];
        if (s == "PASS") ++passed;
        else if (s == "INVALID") {
            ++invalid;
            err << r.value["input"].get<std::string>() << ": " << r.value["reason"].get<std::string>() << "\n";
        } else ++failed;
        items.push_back(r.value);
    }
    report["items"] = items;
    report["summary"] = summary(passed, failed, invalid);
    attach_timings(report, results, t0, c);
    emit(report, c, out);
    return exit_code(failed, invalid);
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"twistorkit: ACM space curves, twistor fibers and flat hyperkaehler metrics"};
    app.require_subcommand(1);
    CommonOptions common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", common.out_dir, "Directory for report.json and per-item artifacts");
        sub->add_flag("--timings", common.timings, "Include wall-clock timings in the report");
    };

    KroneckerOptions kron;
    auto* kron_cmd = app.add_subcommand("kronecker", "Reduce A1 x1 + A2 x2 to the canonical pencil (S, T)");
    kron_cmd->add_option("inputs", kron.inputs, "Pencil or curve documents")->required();
    add_common(kron_cmd);

    auto* acm_cmd = app.add_subcommand("acm", "Determinantal ACM curves");
    acm_cmd->require_subcommand(1);
    AcmVerifyOptions verify;
    auto* verify_cmd = acm_cmd->add_subcommand("verify", "Run every check on curve documents");
    verify_cmd->add_option("inputs", verify.inputs, "Curve documents")->required();
    verify_cmd->add_option("--seed", verify.seed, "Seed for the fiber sample");
    verify_cmd->add_option("--fibers", verify.fibers, "Fibers per curve")->check(CLI::PositiveNumber);
    add_common(verify_cmd);
    AcmRandomOptions random;
    auto* random_cmd = acm_cmd->add_subcommand("random", "Generate certified sigma-invariant curves");
    random_cmd->add_option("--r", random.r, "Matrix size parameter")->required()->check(CLI::PositiveNumber);
    random_cmd->add_option("--count", random.count, "Number of curves");
    random_cmd->add_option("--seed", random.seed, "Seed");
    add_common(random_cmd);

    RationalOptions rational;
    auto* rational_cmd = app.add_subcommand("rational", "Normal bundle splitting of rational curves");
    rational_cmd->add_option("--d", rational.d, "Degree of random curves")->check(CLI::PositiveNumber);
    rational_cmd->add_option("--preset", rational.preset, "Named curve")
        ->check(CLI::IsMember({"line", "conic", "twisted-cubic"}));
    rational_cmd->add_option("inputs", rational.inputs, "Map documents");
    rational_cmd->add_option("--count", rational.count, "Number of random curves");
    rational_cmd->add_option("--seed", rational.seed, "Seed");
    add_common(rational_cmd);

    MetricOptions metric;
    auto* metric_cmd = app.add_subcommand("metric", "Extract the metric on random flat charts");
    metric_cmd->add_option("--r", metric.r, "Matrix size parameter")->required()->check(CLI::PositiveNumber);
    metric_cmd->add_option("--count", metric.count, "Number of charts")->check(CLI::PositiveNumber);
    metric_cmd->add_option("--seed", metric.seed, "Seed");
    metric_cmd->add_option("--fibers", metric.fibers, "Sample fibers (5 to 12)")->check(CLI::Range(5, 12));
    metric_cmd->add_flag("--skip-sigma-gauge", metric.skip_sigma_gauge, "Negative control: use raw charts");
    add_common(metric_cmd);

    auto* cohomology_cmd = app.add_subcommand("cohomology", "Sheaf cohomology");
    cohomology_cmd->require_subcommand(1);
    CohomologyOptions table;
    auto* table_cmd = cohomology_cmd->add_subcommand("table", "Twisted ideal sheaf cohomology of curve documents");
    table_cmd->add_option("inputs", table.inputs, "Curve documents")->required();
    table_cmd->add_option("--kmin", table.k_min, "Lowest twist");
    table_cmd->add_option("--kmax", table.k_max, "Highest twist");
    add_common(table_cmd);

    try {
        app.parse(argc, argv);
        if (*rational_cmd) {
            const int sources = (rational.d ? 1 : 0) + (rational.preset.empty() ? 0 : 1) + (rational.inputs.empty() ? 0 : 1);
            if (sources != 1) throw CLI::ValidationError("rational", "give exactly one of --d, --preset or map files");
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kParseError;
    }

    try {
        if (*kron_cmd) return cmd_kronecker(kron, common, out, err);
        if (*verify_cmd) return cmd_acm_verify(verify, common, out, err);
        if (*random_cmd) return cmd_acm_random(random, common, out, err);
        if (*rational_cmd) return cmd_rational(rational, common, out, err);
        if (*metric_cmd) return cmd_metric(metric, common, out, err);
        if (*table_cmd) return cmd_cohomology_table(table, common, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const InvalidObject& e) {
        err << "invalid input: " << e.what() << "\n";
        return kInvalidObject;
    } catch (const ExtractionFailure& e) {
        err << "extraction failure: " << e.what() << "\n";
        return kExtractionFailure;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return kInvalidObject;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFail;
    }
    return kParseError;
}

}  // namespace twistorkit
