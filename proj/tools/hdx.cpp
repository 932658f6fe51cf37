// hdx: command-line front end for the high-dimensional expander toolkit.
//
// Exit codes: 0 ok, 1 other error, 2 input parse error, 3 exact-mode cap
// exceeded, 4 bound violated, 5 disconnected graph in a mixing check.

#include "hdx/hdx.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using nlohmann::json;

namespace {

struct RunConfig {
    std::string command;
    std::string input;
    std::string output;
    int level = 0;
    std::size_t steps = 10;
    std::uint64_t seed = 1;
    hdx::ExactCaps caps;
    double tolerance = 1e-8;
    std::size_t trials = 100;
    unsigned threads = 1;
    bool as_json = false;
    std::map<std::string, std::string> extra;

    json to_json() const
    {
        json j;
        j["command"] = command;
        j["input"] = input;
        j["output"] = output.empty() ? json(nullptr) : json(output);
        j["level"] = level;
        j["steps"] = steps;
        j["seed"] = seed;
        j["caps"] = {{"alpha_vertices", caps.alpha_vertices},
                     {"epsilon_faces", caps.epsilon_faces},
                     {"conductance_vertices", caps.conductance_vertices},
                     {"bipartite_vertices", caps.bipartite_vertices},
                     {"bipartite_frontier", caps.bipartite_frontier}};
        j["tolerance"] = tolerance;
        j["trials"] = trials;
        j["threads"] = threads;
        for (const auto& [k, v] : extra)
            j[k] = v;
        return j;
    }

    std::string header() const
    {
        std::ostringstream out;
        out << "# hdx " << hdx::kVersion << '\n' << "# config " << to_json().dump() << '\n';
        return out.str();
    }
};

int exit_code(hdx::ErrorKind kind)
{
    using hdx::ErrorKind;
    switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::EmptyInput:
    case ErrorKind::MixedDimension:
    case ErrorKind::DuplicateVertexInFace:
        return 2;
    case ErrorKind::TooLargeForExact:
        return 3;
    case ErrorKind::BoundViolated:
        return 4;
    case ErrorKind::DisconnectedGraph:
        return 5;
    default:
        return 1;
    }
}

hdx::SimplicialComplex load(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw hdx::Error(hdx::ErrorKind::ParseError, "cannot open " + path);
    return hdx::read_cplx(in);
}

/// Writes to --output when given, else stdout.
void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out)
        throw hdx::Error(hdx::ErrorKind::BadParameter, "cannot write " + cfg.output);
    out << text;
}

/// "a,c" or "ac" (single-character labels) or a single label.
hdx::Face parse_face(const hdx::SimplicialComplex& X, const std::string& text)
{
    std::vector<std::string> names;
    if (text.find(',') != std::string::npos) {
        std::stringstream in(text);
        std::string part;
        while (std::getline(in, part, ','))
            names.push_back(part);
    } else {
        bool whole = false;
        for (const auto& l : X.labels())
            whole = whole || l == text;
        if (whole)
            names.push_back(text);
        else
            for (char c : text)
                names.emplace_back(1, c);
    }
    return X.face_from_labels(names);
}

std::string face_text(const hdx::SimplicialComplex& X, const hdx::Face& f) { return X.format(f, ","); }

json check_json(const hdx::CheckResult& c)
{
    return {{"name", c.name}, {"level", c.level}, {"lhs", c.lhs}, {"rhs", c.rhs},
            {"margin", hdx::round12(c.margin)}, {"passed", c.passed}};
}

/// Per-name summary: count, failures, smallest margin, first failure.
json summarize(const hdx::Report& report)
{
    json out = json::array();
    std::vector<std::string> order;
    std::map<std::string, json> by_name;
    for (const auto& c : report.checks) {
        auto it = by_name.find(c.name);
        if (it == by_name.end()) {
            order.push_back(c.name);
            by_name[c.name] = {{"name", c.name}, {"count", 0}, {"failures", 0}, {"min_margin", c.margin},
                               {"first_failure", nullptr}};
            it = by_name.find(c.name);
        }
        json& s = it->second;
        s["count"] = s["count"].get<int>() + 1;
        s["min_margin"] = std::min(s["min_margin"].get<double>(), c.margin);
        if (!c.passed) {
            s["failures"] = s["failures"].get<int>() + 1;
            if (s["first_failure"].is_null())
                s["first_failure"] = check_json(c);
        }
    }
    for (const auto& name : order) {
        json s = by_name[name];
        s["min_margin"] = hdx::round12(s["min_margin"].get<double>());
        out.push_back(s);
    }
    return out;
}

std::string summary_text(const json& summary)
{
    std::ostringstream out;
    for (const auto& s : summary) {
        out << (s["failures"].get<int>() == 0 ? "PASS " : "FAIL ") << s["name"].get<std::string>() << "  checks="
            << s["count"].get<int>() << " failures=" << s["failures"].get<int>()
            << " min_margin=" << hdx::format_double(s["min_margin"].get<double>()) << '\n';
        if (!s["first_failure"].is_null()) {
            const auto& f = s["first_failure"];
            out << "  first failure at level " << f["level"].get<long>() << ": " << f["lhs"].get<std::string>()
                << " vs " << f["rhs"].get<std::string>() << '\n';
        }
    }
    return out.str();
}

[[noreturn]] void fail_bound(const hdx::Report& report)
{
    const auto* f = report.first_failure();
    throw hdx::BoundViolation(f->name, f->level, f->lhs, f->rhs);
}

// -- build -------------------------------------------------------------------------

int cmd_build(RunConfig& cfg, bool corrupt)
{
    auto X = load(cfg.input);
    if (corrupt && X.count(0) > 0)
        hdx::testing::set_degree(X, 0, 0, X.degree(0, 0) + 1);
    const auto report = hdx::validate(X);
    json j;
    j["version"] = hdx::kVersion;
    j["config"] = cfg.to_json();
    j["dimension"] = X.dimension();
    json counts = json::array();
    for (int level = -1; level <= X.dimension(); ++level)
        counts.push_back(X.count(level));
    j["face_counts"] = counts;
    j["valid"] = report.ok();
    j["checks"] = summarize(report);
    if (cfg.as_json) {
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << cfg.header() << "dimension " << X.dimension() << '\n';
        for (int level = -1; level <= X.dimension(); ++level)
            out << "level " << level << ": " << X.count(level) << " faces, degree sum " << X.degree_sum(level)
                << '\n';
        out << summary_text(j["checks"]);
        emit(cfg, out.str());
    }
    if (!report.ok())
        fail_bound(report);
    return 0;
}

// -- certify -------------------------------------------------------------------------

struct CertifyFlags {
    bool all = false;
    bool skeleton_mixing = false;
    bool sampled = false;
    bool heuristic = false;
};

hdx::Report bound_checks(const hdx::SimplicialComplex& X, const hdx::ExpansionCertificate& cert, const RunConfig& cfg)
{
    using hdx::OnViolation;
    hdx::Report all;
    if (cert.epsilon.value && cert.epsilon.provenance == hdx::Provenance::Exact) {
        all.append(hdx::verify_conductance_lemma(X, *cert.epsilon.value, cfg.caps, OnViolation::Collect));
        if (cert.alpha.provenance == hdx::Provenance::Exact)
            all.append(
                hdx::verify_colorful_criterion(X.dimension(), cert.alpha.value, *cert.epsilon.value, OnViolation::Collect));
        if (X.dimension() > 1)
            all.append(hdx::mu_vs_spectrum(X, *cert.epsilon.value, cfg.tolerance, OnViolation::Collect));
    }
    for (int i = 0; i < X.dimension(); ++i) {
        const auto G = hdx::build_igraph(X, i);
        const auto spec = hdx::spectrum(hdx::normalized_adjacency(G));
        all.append(hdx::cheeger_check(cert.conductance[static_cast<std::size_t>(i)].value, spec, cfg.tolerance, i,
                                      OnViolation::Collect));
        const auto& beta = cert.bipartiteness[static_cast<std::size_t>(i)];
        if (beta && beta->provenance == hdx::Provenance::Exact) {
            all.append(hdx::trevisan_check(beta->value, spec, cfg.tolerance, i, OnViolation::Collect));
            const hdx::Rational floor(1, i + 2);
            all.add({"bound-bipartiteness", i, hdx::to_string(beta->value), hdx::to_string(floor),
                     hdx::to_double(beta->value - floor), beta->value >= floor});
        }
    }
    return all;
}

int cmd_certify(RunConfig& cfg, const CertifyFlags& flags)
{
    auto X = load(cfg.input);
    hdx::CertifyOptions opt;
    opt.search.caps = cfg.caps;
    opt.search.sampled = flags.sampled;
    opt.search.trials = cfg.trials;
    opt.search.seed = cfg.seed;
    opt.heuristic_bipartiteness = flags.heuristic;
    const auto cert = hdx::certify(X, opt);

    json j = hdx::to_json(X, cert);
    j["version"] = hdx::kVersion;
    j["config"] = cfg.to_json();

    hdx::Report checks;
    if (flags.all) {
        checks = bound_checks(X, cert, cfg);
        json list = json::array();
        for (const auto& c : checks.checks)
            list.push_back(check_json(c));
        j["checks"] = list;
        j["notes"] = checks.notes;
    }
    if (flags.skeleton_mixing) {
        const auto partite = hdx::check_partite_regular(X);
        const auto& P = hdx::require_partite(partite);
        auto mix = hdx::skeleton_mixing_check(X, P, 24, hdx::OnViolation::Collect);
        json pairs = json::array();
        for (const auto& p : mix.pairs)
            pairs.push_back({{"parts", {p.first, p.second}}, {"lambda", hdx::round12(p.lambda)},
                             {"residual", hdx::round12(p.residual)}});
        json parts = json::array();
        for (const auto& part : P.parts) {
            json names = json::array();
            for (auto v : part)
                names.push_back(X.label(v));
            parts.push_back(names);
        }
        json list = json::array();
        for (const auto& c : mix.report.checks)
            list.push_back(check_json(c));
        j["skeleton_mixing"] = {{"lambda", hdx::round12(mix.lambda)}, {"residual", hdx::round12(mix.residual)},
                                {"parts", parts},   {"pairs", pairs},
                                {"checks", list},   {"passed", mix.report.ok()}};
        checks.append(mix.report);
    }
    emit(cfg, j.dump(2) + "\n");
    if (!checks.ok())
        fail_bound(checks);
    return 0;
}

// -- walk -------------------------------------------------------------------------------

struct WalkFlags {
    std::string start;
    bool lazy = false;
    std::size_t simulate = 0;
    std::string trajectory;
    bool mixing = true;
};

int cmd_walk(RunConfig& cfg, const WalkFlags& flags)
{
    auto X = load(cfg.input);
    const int level = cfg.level;
    hdx::IGraph G = hdx::build_igraph(X, level);
    if (flags.lazy) {
        if (level != 0)
            throw hdx::Error(hdx::ErrorKind::BadParameter, "--lazy applies to the vertex walk (--dim 0)");
        if (flags.simulate > 0 || !flags.trajectory.empty())
            throw hdx::Error(hdx::ErrorKind::BadParameter, "simulation follows the non-lazy walk; drop --lazy");
        G = hdx::lazy_igraph(G);
    }
    std::vector<std::size_t> starts;
    if (!flags.start.empty()) {
        const auto face = parse_face(X, flags.start);
        if (face.dimension() != level)
            throw hdx::Error(hdx::ErrorKind::BadParameter, "--start must be a " + std::to_string(level) + "-face");
        starts.push_back(X.require_index(face));
    } else {
        for (std::size_t s = 0; s < G.order(); ++s)
            starts.push_back(s);
    }

    json j;
    j["version"] = hdx::kVersion;
    j["config"] = cfg.to_json();
    json faces = json::array();
    for (std::size_t s = 0; s < X.count(level); ++s)
        faces.push_back(face_text(X, X.face(level, s)));
    j["faces"] = faces;

    std::ostringstream text;
    text << cfg.header();
    text << "faces:";
    for (const auto& f : faces)
        text << ' ' << f.get<std::string>();
    text << '\n';

    json rows = json::array();
    text << "exact distribution after " << cfg.steps << " steps\n";
    for (auto s : starts) {
        auto pi = hdx::indicator(G, s);
        for (std::size_t t = 0; t < cfg.steps; ++t)
            pi = hdx::transition_step(G, pi);
        json row = json::array();
        text << "from " << face_text(X, X.face(level, s)) << ":";
        for (const auto& p : pi) {
            row.push_back(hdx::to_string(p));
            text << ' ' << hdx::to_string(p);
        }
        text << '\n';
        rows.push_back({{"start", face_text(X, X.face(level, s))}, {"row", row}});
    }
    j["exact"] = rows;

    hdx::Report checks;
    if (flags.mixing) {
        const auto spec = hdx::spectrum(hdx::normalized_adjacency(G));
        const double lambda = spec.second_magnitude();
        const std::size_t origin = starts.front();
        auto mix = hdx::verify_mixing_bound(G, hdx::indicator(G, origin), cfg.steps, lambda,
                                            cfg.tolerance + spec.residual, hdx::OnViolation::Collect);
        json table = json::array();
        text << "spectrum: lambda2 = " << hdx::format_double(spec.second())
             << " lambda_min = " << hdx::format_double(spec.smallest()) << " lambda = " << hdx::format_double(lambda)
             << " residual = " << hdx::format_double(spec.residual) << '\n';
        text << "mixing bound from " << face_text(X, X.face(level, origin))
             << ", sqrt(dmax/dmin) = " << hdx::format_double(std::sqrt(mix.degree_ratio)) << '\n';
        text << "t  distance  bound  margin\n";
        for (const auto& r : mix.rows) {
            table.push_back({{"t", r.t}, {"distance", hdx::round12(r.distance)}, {"bound", hdx::round12(r.bound)},
                             {"margin", hdx::round12(r.margin)}});
            text << r.t << "  " << hdx::format_double(r.distance) << "  " << hdx::format_double(r.bound) << "  "
                 << hdx::format_double(r.margin) << '\n';
        }
        j["spectrum"] = {{"lambda2", hdx::round12(spec.second())},
                         {"lambda_min", hdx::round12(spec.smallest())},
                         {"lambda", hdx::round12(lambda)},
                         {"residual", hdx::round12(spec.residual)}};
        j["mixing"] = {{"start", face_text(X, X.face(level, origin))},
                       {"degree_ratio", hdx::round12(mix.degree_ratio)},
                       {"rows", table},
                       {"passed", mix.checks.ok()}};
        checks.append(mix.checks);
    }

    if (flags.simulate > 0) {
        const std::size_t origin = starts.front();
        const auto counts = hdx::simulate_endpoints(X, level, origin, cfg.steps, flags.simulate, cfg.seed, cfg.threads);
        auto exact = hdx::indicator(G, origin);
        for (std::size_t t = 0; t < cfg.steps; ++t)
            exact = hdx::transition_step(G, exact);
        json sim = json::array();
        text << "simulation: " << flags.simulate << " walks of " << cfg.steps << " steps from "
             << face_text(X, X.face(level, origin)) << '\n';
        text << "face  count  empirical  exact  z\n";
        const double n = static_cast<double>(flags.simulate);
        for (std::size_t s = 0; s < counts.size(); ++s) {
            const double p = hdx::to_double(exact[s]);
            const double sd = std::sqrt(n * p * (1 - p));
            const double z = sd > 0 ? (static_cast<double>(counts[s]) - n * p) / sd : 0.0;
            sim.push_back({{"face", face_text(X, X.face(level, s))}, {"count", counts[s]},
                           {"empirical", hdx::round12(static_cast<double>(counts[s]) / n)},
                           {"exact", hdx::to_string(exact[s])}, {"z", hdx::round12(z)}});
            text << face_text(X, X.face(level, s)) << "  " << counts[s] << "  "
                 << hdx::format_double(static_cast<double>(counts[s]) / n) << "  " << hdx::to_string(exact[s]) << "  "
                 << hdx::format_double(z) << '\n';
        }
        j["simulation"] = {{"walks", flags.simulate}, {"rows", sim}};
    }

    if (!flags.trajectory.empty()) {
        const auto path = hdx::simulate_walk(X, level, X.face(level, starts.front()), cfg.steps, cfg.seed);
        std::ofstream out(flags.trajectory, std::ios::binary);
        if (!out)
            throw hdx::Error(hdx::ErrorKind::BadParameter, "cannot write " + flags.trajectory);
        hdx::write_trajectory(out, X, level, cfg.seed, path);
    }

    emit(cfg, cfg.as_json ? j.dump(2) + "\n" : text.str());
    if (!checks.ok())
        fail_bound(checks);
    return 0;
}

// -- verify -------------------------------------------------------------------------------

int cmd_verify(RunConfig& cfg, bool corrupt, std::size_t mixing_steps)
{
    auto X = load(cfg.input);
    if (corrupt && X.count(0) > 0)
        hdx::testing::set_degree(X, 0, 0, X.degree(0, 0) + 1);
    using hdx::OnViolation;

    hdx::Report all;
    all.append(hdx::validate(X));
    std::vector<std::string> notes;
    if (all.ok()) {
        hdx::CertifyOptions opt;
        opt.search.caps = cfg.caps;
        const auto cert = hdx::certify(X, opt);
        all.append(bound_checks(X, cert, cfg));

        hdx::WalkRng rng(cfg.seed);
        if (X.dimension() >= 1)
            for (std::size_t k = 0; k < cfg.trials; ++k) {
                const auto inst = hdx::draw_trace_instance(X, rng);
                auto trace = hdx::verify_proof_trace(X, inst.cochain, inst.eta, inst.c, cert.alpha.value,
                                                     OnViolation::Collect);
                all.append(trace.report);
            }

        for (int i = 0; i < X.dimension(); ++i) {
            const auto G = hdx::build_igraph(X, i);
            if (!G.connected()) {
                notes.push_back("G_" + std::to_string(i) + " is disconnected; mixing bound skipped");
                continue;
            }
            const auto spec = hdx::spectrum(hdx::normalized_adjacency(G));
            for (std::size_t s = 0; s < G.order(); ++s)
                all.append(hdx::verify_mixing_bound(G, hdx::indicator(G, s), mixing_steps, spec.second_magnitude(),
                                                    cfg.tolerance + spec.residual, OnViolation::Collect)
                               .checks);
        }
    }
    for (const auto& n : all.notes)
        notes.push_back(n);

    json j;
    j["version"] = hdx::kVersion;
    j["config"] = cfg.to_json();
    j["summary"] = summarize(all);
    j["notes"] = notes;
    j["passed"] = all.ok();
    if (cfg.as_json) {
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << cfg.header() << summary_text(j["summary"]);
        for (const auto& n : notes)
            out << "note: " << n << '\n';
        out << (all.ok() ? "all checks passed\n" : "verification failed\n");
        emit(cfg, out.str());
    }
    if (!all.ok())
        fail_bound(all);
    return 0;
}

// -- spectrum -------------------------------------------------------------------------------

int cmd_spectrum(RunConfig& cfg, bool lazy)
{
    auto X = load(cfg.input);
    auto G = hdx::build_igraph(X, cfg.level);
    if (lazy)
        G = hdx::with_self_loops(G);
    const auto spec = hdx::spectrum(hdx::normalized_adjacency(G));
    if (cfg.as_json) {
        json j = hdx::spectrum_json(spec);
        j["version"] = hdx::kVersion;
        j["config"] = cfg.to_json();
        emit(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << cfg.header();
        hdx::write_spectrum_text(out, spec);
        emit(cfg, out.str());
    }
    return 0;
}

// -- generate ---------------------------------------------------------------------------------

int emit_complex(const RunConfig& cfg, const hdx::SimplicialComplex& X, const std::string& description)
{
    std::ostringstream out;
    out << "# hdx " << hdx::kVersion << " " << description << '\n';
    hdx::write_cplx(out, X);
    emit(cfg, out.str());
    return 0;
}

std::vector<int> parse_sizes(const std::string& text)
{
    std::vector<int> sizes;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            sizes.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw hdx::Error(hdx::ErrorKind::BadParameter, "bad part size '" + part + "'");
        }
    }
    return sizes;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact expansion certificates and high-order random walks on simplicial complexes"};
    app.set_version_flag("--version", std::string(hdx::kVersion));
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("HDX_THREADS"))
        cfg.threads = static_cast<unsigned>(std::max(1, std::atoi(env)));

    auto add_common = [&](CLI::App* sub, bool with_input = true) {
        if (with_input)
            sub->add_option("input", cfg.input, "complex in .cplx format")->required();
        sub->add_option("-o,--output", cfg.output, "write the report here instead of stdout");
        sub->add_flag("--json", cfg.as_json, "machine-readable output");
        sub->add_option("--threads", cfg.threads, "worker threads (default $HDX_THREADS or 1)")
            ->check(CLI::PositiveNumber);
    };
    auto add_caps = [&](CLI::App* sub) {
        sub->add_option("--alpha-cap", cfg.caps.alpha_vertices, "max link vertices for exact alpha")
            ->capture_default_str();
        sub->add_option("--epsilon-cap", cfg.caps.epsilon_faces, "max faces per level for exact epsilon")
            ->capture_default_str();
        sub->add_option("--conductance-cap", cfg.caps.conductance_vertices, "max vertices for exact conductance")
            ->capture_default_str();
        sub->add_option("--bipartite-cap", cfg.caps.bipartite_vertices, "max vertices for exact bipartiteness")
            ->capture_default_str();
        sub->add_option("--bipartite-width", cfg.caps.bipartite_frontier,
                        "max elimination width for exact bipartiteness above the vertex cap")
            ->capture_default_str();
        sub->add_option("--tolerance", cfg.tolerance, "numerical allowance for spectral checks")
            ->capture_default_str();
    };

    bool corrupt = false;
    auto* build = app.add_subcommand("build", "parse and validate a complex");
    add_common(build);
    build->add_flag("--corrupt-degree", corrupt)->group("");

    CertifyFlags certify_flags;
    auto* certify = app.add_subcommand("certify", "exact expansion certificate (JSON)");
    add_common(certify);
    add_caps(certify);
    certify->add_flag("--all", certify_flags.all, "also run every bound check on the certificate");
    certify->add_flag("--skeleton-mixing", certify_flags.skeleton_mixing,
                      "check partite regularity and the skeleton mixing inequality");
    certify->add_flag("--sampled", certify_flags.sampled, "sample above the exact caps (uncertified)");
    certify->add_flag("--heuristic", certify_flags.heuristic, "local search for bipartiteness above its cap");
    certify->add_option("--trials", cfg.trials, "samples per oversized search")->capture_default_str();
    certify->add_option("--seed", cfg.seed, "seed for sampled modes")->capture_default_str();

    WalkFlags walk_flags;
    bool no_mixing = false;
    auto* walk = app.add_subcommand("walk", "exact walk distributions, mixing table and simulation");
    add_common(walk);
    walk->add_option("--dim", cfg.level, "walk level i (0 <= i < d)")->required();
    walk->add_option("--steps", cfg.steps, "number of steps")->capture_default_str();
    walk->add_option("--seed", cfg.seed, "simulation seed")->capture_default_str();
    walk->add_option("--start", walk_flags.start, "start face, e.g. a,c (default: every face)");
    walk->add_flag("--lazy", walk_flags.lazy, "lazy vertex walk (self-loop weight = degree)");
    walk->add_option("--simulate", walk_flags.simulate, "number of simulated walks");
    walk->add_option("--trajectory", walk_flags.trajectory, "dump one simulated trajectory to this file");
    walk->add_flag("--no-mixing", no_mixing, "skip the spectral mixing-bound table");
    walk->add_option("--tolerance", cfg.tolerance, "numerical allowance for the mixing bound")
        ->capture_default_str();

    std::size_t mixing_steps = 30;
    auto* verify = app.add_subcommand("verify", "run every theorem check and random proof traces");
    add_common(verify);
    add_caps(verify);
    verify->add_option("--trials", cfg.trials, "random proof-trace instances")->capture_default_str();
    verify->add_option("--seed", cfg.seed, "seed for the instances")->capture_default_str();
    verify->add_option("--mixing-steps", mixing_steps, "steps in each mixing-bound check")->capture_default_str();
    verify->add_flag("--corrupt-degree", corrupt)->group("");

    bool lazy_spectrum = false;
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the normalized adjacency of G_i");
    add_common(spectrum);
    spectrum->add_option("--dim", cfg.level, "level i")->required();
    spectrum->add_flag("--lazy", lazy_spectrum, "add self-loops of weight deg(v)");

    auto* generate = app.add_subcommand("generate", "write a generated complex in .cplx format");
    generate->require_subcommand(1);
    int n = 0;
    int d = 0;
    double p = 0.5;
    std::string sizes;
    auto* complete = generate->add_subcommand("complete", "all (d+1)-subsets of n vertices");
    add_common(complete, false);
    complete->add_option("--n", n)->required();
    complete->add_option("--d", d)->required();
    auto* multipartite = generate->add_subcommand("multipartite", "complete (d+1)-partite complex");
    add_common(multipartite, false);
    multipartite->add_option("--parts", sizes, "part sizes, e.g. 2,2,2")->required();
    auto* random = generate->add_subcommand("random", "each d-face kept with probability p");
    add_common(random, false);
    random->add_option("--n", n)->required();
    random->add_option("--d", d)->required();
    random->add_option("--p", p)->required();
    random->add_option("--seed", cfg.seed)->capture_default_str();

    double C = 1.0;
    auto* q0 = app.add_subcommand("q0", "Ramanujan thickness threshold for a given constant C");
    add_common(q0, false);
    q0->add_option("--d", d)->required();
    q0->add_option("--C", C)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) {
            cfg.command = "build";
            return cmd_build(cfg, corrupt);
        }
        if (*certify) {
            cfg.command = "certify";
            cfg.extra["all"] = certify_flags.all ? "true" : "false";
            cfg.extra["skeleton_mixing"] = certify_flags.skeleton_mixing ? "true" : "false";
            cfg.extra["sampled"] = certify_flags.sampled ? "true" : "false";
            cfg.extra["heuristic"] = certify_flags.heuristic ? "true" : "false";
            return cmd_certify(cfg, certify_flags);
        }
        if (*walk) {
            cfg.command = "walk";
            walk_flags.mixing = !no_mixing;
            cfg.extra["start"] = walk_flags.start;
            cfg.extra["lazy"] = walk_flags.lazy ? "true" : "false";
            cfg.extra["simulate"] = std::to_string(walk_flags.simulate);
            cfg.extra["trajectory"] = walk_flags.trajectory;
            cfg.extra["mixing"] = walk_flags.mixing ? "true" : "false";
            return cmd_walk(cfg, walk_flags);
        }
        if (*verify) {
            cfg.command = "verify";
            cfg.extra["mixing_steps"] = std::to_string(mixing_steps);
            return cmd_verify(cfg, corrupt, mixing_steps);
        }
        if (*spectrum) {
            cfg.command = "spectrum";
            cfg.extra["lazy"] = lazy_spectrum ? "true" : "false";
            return cmd_spectrum(cfg, lazy_spectrum);
        }
        if (*complete)
            return emit_complex(cfg, hdx::complete_complex(n, d),
                                "complete n=" + std::to_string(n) + " d=" + std::to_string(d));
        if (*multipartite)
            return emit_complex(cfg, hdx::complete_multipartite_complex(parse_sizes(sizes)), "multipartite " + sizes);
        if (*random) {
            std::ostringstream desc;
            desc << "random n=" << n << " d=" << d << " p=" << hdx::format_double(p) << " seed=" << cfg.seed;
            return emit_complex(cfg, hdx::random_lm_complex(n, d, p, cfg.seed), desc.str());
        }
        if (*q0) {
            const double value = hdx::ramanujan_q0(d, C);
            if (cfg.as_json)
                emit(cfg, json{{"version", hdx::kVersion}, {"d", d}, {"C", C}, {"q0", hdx::round12(value)}}.dump(2) +
                              "\n");
            else
                emit(cfg, "q0 = " + hdx::format_double(value) + "\n");
            return 0;
        }
    } catch (const hdx::BoundViolation& e) {
        std::cerr << "hdx: " << e.what() << '\n';
        return 4;
    } catch (const hdx::Error& e) {
        std::cerr << "hdx: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "hdx: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
