#include "cli_main.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dynsched/builders.hpp"
#include "dynsched/experiments.hpp"
#include "dynsched/injection.hpp"
#include "dynsched/io.hpp"
#include "dynsched/metrics.hpp"
#include "dynsched/oracles.hpp"
#include "dynsched/protocol.hpp"
#include "dynsched/schedulers.hpp"

namespace dynsched {

namespace {

namespace fs = std::filesystem;

fs::path resolve(const fs::path& base, const std::string& p) {
    const fs::path q(p);
    return q.is_absolute() ? q : base / q;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
    std::vector<double> values;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        try {
            values.push_back(std::stod(token));
        } catch (const std::logic_error&) {
            throw std::runtime_error("config key '" + key + "': bad number '" + token + "'");
        }
    }
    return values;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& key) {
    std::vector<std::int64_t> values;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        try {
            values.push_back(std::stoll(token));
        } catch (const std::logic_error&) {
            throw std::runtime_error("config key '" + key + "': bad integer '" + token + "'");
        }
    }
    return values;
}

double get_double_or(const Config& cfg, const std::string& key, double fallback) {
    return cfg.has(key) ? cfg.get_double(key) : fallback;
}

// chosen model with everything the oracle references kept alive behind pointers
struct ModelBundle {
    std::unique_ptr<NetworkInstance> net;
    std::unique_ptr<GeometricInstance> geo;
    std::unique_ptr<ConflictGraph> graph;
    std::unique_ptr<InterferenceMatrix> w;
    std::vector<LinkId> infeasible;
    std::unique_ptr<SuccessOracle> oracle;  // empty when the model has no slot semantics
    std::string model;
};

PowerAssignment make_power(const Config& cfg, const NetworkInstance& net,
                           const GeometricInstance& geo, double alpha, PowerKind fallback) {
    PowerAssignment power;
    if (cfg.has("power")) {
        power.power = parse_double_list(cfg.get("power"), "power");
        if (static_cast<int>(power.power.size()) != net.link_count())
            throw std::runtime_error("config key 'power' lists " +
                                     std::to_string(power.power.size()) + " values for " +
                                     std::to_string(net.link_count()) + " links");
    } else {
        // p(e) = d(e)^alpha satisfies both the linear and the monotone preconditions
        power.power.reserve(static_cast<std::size_t>(net.link_count()));
        for (LinkId e = 0; e < net.link_count(); ++e)
            power.power.push_back(std::pow(link_length(net, geo, e), alpha));
    }
    const std::string kind = cfg.get_or("power-kind", "");
    if (kind.empty())
        power.kind = fallback;
    else if (kind == "uniform")
        power.kind = PowerKind::uniform;
    else if (kind == "linear")
        power.kind = PowerKind::linear;
    else if (kind == "monotone")
        power.kind = PowerKind::monotone_sublinear;
    else if (kind == "custom")
        power.kind = PowerKind::custom;
    else
        throw std::runtime_error("unknown power-kind '" + kind + "'");
    return power;
}

std::vector<std::pair<LinkId, LinkId>> parse_edge_list(const std::string& text) {
    std::vector<std::pair<LinkId, LinkId>> edges;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        const auto dash = token.find('-');
        if (dash == std::string::npos)
            throw std::runtime_error("conflict edge '" + token + "' is not of the form a-b");
        try {
            edges.emplace_back(std::stoi(token.substr(0, dash)),
                               std::stoi(token.substr(dash + 1)));
        } catch (const std::logic_error&) {
            throw std::runtime_error("conflict edge '" + token + "' is not of the form a-b");
        }
    }
    return edges;
}

// without a network file, `link-count` synthesizes disjoint links s_i -> r_i
NetworkInstance network_from_config(const Config& cfg, const fs::path& base) {
    if (cfg.has("network"))
        return load_network_file(resolve(base, cfg.get("network")));
    if (!cfg.has("link-count"))
        throw std::runtime_error("config needs either 'network' or 'link-count'");
    const int n = static_cast<int>(cfg.get_int("link-count"));
    if (n <= 0) throw std::runtime_error("link-count must be positive");
    std::vector<std::string> nodes;
    std::vector<Link> links;
    nodes.reserve(static_cast<std::size_t>(2 * n));
    links.reserve(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) {
        nodes.push_back("s" + std::to_string(e));
        nodes.push_back("r" + std::to_string(e));
        links.push_back(Link{2 * e, 2 * e + 1});
    }
    return NetworkInstance(std::move(nodes), std::move(links), 1);
}

ModelBundle load_model(const Config& cfg, const fs::path& base) {
    ModelBundle b;
    b.net = std::make_unique<NetworkInstance>(network_from_config(cfg, base));
    b.model = cfg.get("model");
    const int n = b.net->link_count();

    const bool needs_geometry = b.model.rfind("sinr-", 0) == 0;
    SinrParams params{};
    if (needs_geometry) {
        b.geo = std::make_unique<GeometricInstance>(
            load_geometry_file(resolve(base, cfg.get("geometry")), *b.net));
        params.alpha = cfg.get_double("alpha");
        params.beta = cfg.get_double("beta");
        params.nu = get_double_or(cfg, "noise", 0.0);
        params.validate();
    }

    if (b.model == "mac") {
        b.w = std::make_unique<InterferenceMatrix>(build_w_mac(n));
        b.oracle = std::make_unique<MacOracle>();
    } else if (b.model == "routing") {
        b.w = std::make_unique<InterferenceMatrix>(build_w_identity(n));
        b.oracle = std::make_unique<EdgeCapacityOracle>();
    } else if (b.model == "conflict") {
        auto edges = parse_edge_list(cfg.get_or("conflict-edges", ""));
        std::vector<int> pi;
        if (cfg.has("pi"))
            for (const auto v : parse_int_list(cfg.get("pi"), "pi"))
                pi.push_back(static_cast<int>(v));
        const int rho = static_cast<int>(cfg.has("rho") ? cfg.get_int("rho") : 1);
        b.graph = std::make_unique<ConflictGraph>(n, std::move(edges), std::move(pi), rho);
        b.w = std::make_unique<InterferenceMatrix>(build_w_conflict(*b.graph));
        b.oracle = std::make_unique<ConflictOracle>(*b.graph);
    } else if (b.model == "node-constraint") {
        b.w = std::make_unique<InterferenceMatrix>(build_w_node_constraint(*b.net));
        std::vector<std::pair<LinkId, LinkId>> edges;
        for (LinkId a = 0; a < n; ++a)
            for (LinkId c = a + 1; c < n; ++c) {
                const Link& la = b.net->link(a);
                const Link& lc = b.net->link(c);
                if (la.sender == lc.sender || la.sender == lc.receiver ||
                    la.receiver == lc.sender || la.receiver == lc.receiver)
                    edges.emplace_back(a, c);
            }
        b.graph = std::make_unique<ConflictGraph>(n, std::move(edges));
        b.oracle = std::make_unique<ConflictOracle>(*b.graph);
    } else if (b.model == "sinr-linear") {
        const PowerAssignment power = make_power(cfg, *b.net, *b.geo, params.alpha,
                                                 PowerKind::linear);
        WBuild built = build_w_linear(*b.net, *b.geo, params, power);
        b.w = std::make_unique<InterferenceMatrix>(std::move(built.w));
        b.infeasible = std::move(built.infeasible_links);
        b.oracle = std::make_unique<SinrOracle>(*b.net, *b.geo, params, power);
    } else if (b.model == "sinr-monotone") {
        const PowerAssignment power = make_power(cfg, *b.net, *b.geo, params.alpha,
                                                 PowerKind::monotone_sublinear);
        WBuild built = build_w_monotone(*b.net, *b.geo, params, power);
        b.w = std::make_unique<InterferenceMatrix>(std::move(built.w));
        b.infeasible = std::move(built.infeasible_links);
        b.oracle = std::make_unique<SinrOracle>(*b.net, *b.geo, params, power);
    } else if (b.model == "sinr-power-control") {
        b.w = std::make_unique<InterferenceMatrix>(
            build_w_power_control(*b.net, *b.geo, params));
    } else {
        throw std::runtime_error("unknown model '" + b.model + "'");
    }
    return b;
}

SchedulerDescriptor make_descriptor_named(const Config& cfg, const ModelBundle& bundle,
                                          const std::string& name) {
    if (name == "random-access")
        return make_random_access_descriptor(get_double_or(cfg, "cap-constant", 64.0));
    if (name == "mac-symmetric")
        return make_mac_symmetric_descriptor(get_double_or(cfg, "phi", 1.0),
                                             get_double_or(cfg, "delta", 0.5));
    if (name == "round-robin") return make_round_robin_descriptor(bundle.net->link_count());
    if (name == "single-hop") return make_single_hop_routing_descriptor();
    if (name == "transformed") {
        const std::string base_name = cfg.get("transform-base");
        if (base_name == "transformed")
            throw std::runtime_error("transform-base cannot itself be 'transformed'");
        return make_transformed_descriptor(make_descriptor_named(cfg, bundle, base_name),
                                           bundle.net->size(),
                                           get_double_or(cfg, "phi", 1.0));
    }
    throw std::runtime_error("unknown scheduler '" + name + "'");
}

SchedulerDescriptor make_descriptor(const Config& cfg, const ModelBundle& bundle) {
    return make_descriptor_named(cfg, bundle, cfg.get("scheduler"));
}

std::vector<Request> load_requests(const Config& cfg, const fs::path& base, int link_count) {
    std::vector<Request> requests;
    if (cfg.has("requests")) {
        const fs::path p = resolve(base, cfg.get("requests"));
        std::ifstream in(p);
        if (!in) throw std::runtime_error("cannot open " + p.string());
        std::string raw;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            std::istringstream parts(raw);
            std::string head;
            if (!(parts >> head)) continue;
            long long link = -1;
            if (head != "request" || !(parts >> link))
                throw std::runtime_error("request file line " + std::to_string(line) +
                                         ": expected 'request <link>'");
            requests.push_back(Request{static_cast<LinkId>(link),
                                       static_cast<std::uint64_t>(requests.size())});
        }
    } else if (cfg.has("queues")) {
        const auto queues = parse_int_list(cfg.get("queues"), "queues");
        for (std::size_t st = 0; st < queues.size(); ++st)
            for (std::int64_t k = 0; k < queues[st]; ++k)
                requests.push_back(Request{static_cast<LinkId>(st),
                                           static_cast<std::uint64_t>(requests.size())});
    } else {
        throw std::runtime_error("config needs either 'requests' or 'queues'");
    }
    for (const auto& r : requests)
        if (r.link < 0 || r.link >= link_count)
            throw std::runtime_error("request on link " + std::to_string(r.link) +
                                     " outside 0.." + std::to_string(link_count - 1));
    return requests;
}

std::uint64_t pick_seed(const Config& cfg, const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    return static_cast<std::uint64_t>(cfg.get_int("seed"));
}

int cmd_build_matrix(const fs::path& config_path, const fs::path& out_dir) {
    const Config cfg = Config::parse_file(config_path);
    const ModelBundle bundle = load_model(cfg, config_path.parent_path());
    save_matrix_file(out_dir / "w.matrix", *bundle.w);

    const MatrixValidation validation = validate_matrix(*bundle.w);
    Config report;
    report.set("model", bundle.model);
    report.set("links", std::to_string(bundle.w->size()));
    report.set("nonzeros", std::to_string(bundle.w->nonzero_count()));
    report.set("valid", validation.ok ? "yes" : "no");
    for (std::size_t i = 0; i < validation.violations.size(); ++i) {
        const auto& v = validation.violations[i];
        report.set("violation." + std::to_string(i),
                   std::string(v.kind == MatrixViolation::Kind::diagonal ? "diagonal"
                                                                         : "range") +
                       " " + std::to_string(v.row) + " " + std::to_string(v.col) + " " +
                       format_number(v.value));
    }
    if (!bundle.infeasible.empty()) {
        std::string list;
        for (const LinkId e : bundle.infeasible)
            list += (list.empty() ? "" : " ") + std::to_string(e);
        report.set("infeasible-links", list);
    }
    atomic_write_file(out_dir / "matrix-report.cfg", report.serialize());
    std::cout << "wrote " << (out_dir / "w.matrix").string() << ": "
              << bundle.w->nonzero_count() << " entries, valid = "
              << (validation.ok ? "yes" : "no") << "\n";
    return 0;
}

int cmd_run_static(const fs::path& config_path, const fs::path& out_dir,
                   const std::optional<std::uint64_t>& seed_flag) {
    const Config cfg = Config::parse_file(config_path);
    const ModelBundle bundle = load_model(cfg, config_path.parent_path());
    if (!bundle.oracle)
        throw std::runtime_error("model '" + bundle.model + "' provides no slot oracle");
    const SchedulerDescriptor desc = make_descriptor(cfg, bundle);
    const std::vector<Request> requests =
        load_requests(cfg, config_path.parent_path(), bundle.net->link_count());
    const std::uint64_t seed = pick_seed(cfg, seed_flag);

    RequestVector rv;
    rv.counts.assign(static_cast<std::size_t>(bundle.net->link_count()), 0);
    for (const auto& r : requests) ++rv.counts[static_cast<std::size_t>(r.link)];
    const double measure = interference_measure(*bundle.w, rv);

    ScheduleRun run;
    RngStream rng(seed, "scheduler");
    if (!requests.empty()) {
        const double count = static_cast<double>(requests.size());
        run = desc.algorithm->run(requests, measure, count,
                                  desc.algorithm->planned_slots(measure, count),
                                  *bundle.oracle, rng, true);
    }
    const ScheduleValidation validation =
        requests.empty() ? ScheduleValidation{}
                         : validate_schedule(requests, run, *bundle.oracle);

    std::ostringstream log;
    for (std::size_t s = 0; s < run.per_slot_attempts.size(); ++s) {
        log << "slot " << s << ":";
        for (const auto& attempt : run.per_slot_attempts[s])
            log << " " << attempt.link << ":" << attempt.request_id;
        log << "\n";
    }
    atomic_write_file(out_dir / "schedule.log", log.str());

    Config summary;
    summary.set("scheduler", desc.name);
    summary.set("seed", std::to_string(seed));
    summary.set("requests", std::to_string(requests.size()));
    summary.set("measure", format_number(measure));
    summary.set("slots_used", std::to_string(run.slots_used));
    summary.set("served", std::to_string(run.served_count()));
    summary.set("unserved",
                std::to_string(static_cast<std::int64_t>(requests.size()) -
                               run.served_count()));
    summary.set("valid", validation.ok ? "yes" : "no");
    if (!validation.ok) summary.set("invalid-reason", validation.reason);
    atomic_write_file(out_dir / "static-summary.cfg", summary.serialize());
    std::cout << "slots_used = " << run.slots_used << ", served = " << run.served_count()
              << "/" << requests.size() << ", valid = " << (validation.ok ? "yes" : "no")
              << "\n";
    return 0;
}

int cmd_run_dynamic(const fs::path& config_path, const fs::path& out_dir,
                    const std::optional<std::uint64_t>& seed_flag,
                    const std::optional<std::int64_t>& override_flag) {
    const Config cfg = Config::parse_file(config_path);
    const fs::path base = config_path.parent_path();
    const ModelBundle bundle = load_model(cfg, base);
    if (!bundle.oracle)
        throw std::runtime_error("model '" + bundle.model + "' provides no slot oracle");
    const SchedulerDescriptor desc = make_descriptor(cfg, bundle);
    const int m = bundle.net->size();
    const double epsilon = cfg.get_double("epsilon");

    std::optional<DelayWrapperConfig> wrapper;
    double frame_epsilon = epsilon;
    if (cfg.has("wrapper-window")) {
        wrapper = make_delay_wrapper(epsilon, bundle.net->max_path_length(),
                                     cfg.get_int("wrapper-window"));
        frame_epsilon = wrapper->effective_epsilon;
    }
    std::int64_t override_t = override_flag.value_or(0);
    if (override_t == 0 && cfg.has("override-T")) override_t = cfg.get_int("override-T");
    const FrameConfig frame =
        override_t > 0 ? compute_frame_params_override(frame_epsilon, desc, m, override_t)
                       : compute_frame_params(frame_epsilon, desc, m);
    if (wrapper) wrapper->lambda_prime = frame.lambda;

    const std::string kind = cfg.get("injection");
    StochasticInjectionSpec spec;
    AdversarialTrace trace;
    InjectionSource source;
    if (kind == "stochastic") {
        spec = load_injection_spec_file(resolve(base, cfg.get("injection-spec")), *bundle.net);
        source = InjectionSource::stochastic(spec);
    } else if (kind == "adversarial") {
        trace = load_trace_file(resolve(base, cfg.get("trace")), *bundle.net);
        source = InjectionSource::adversarial(trace, wrapper);
    } else {
        throw std::runtime_error("injection must be 'stochastic' or 'adversarial'");
    }

    SimulationOptions options;
    options.horizon_frames = cfg.get_int("horizon");
    options.seed = pick_seed(cfg, seed_flag);
    options.record_per_packet = cfg.get_or("per-packet", "yes") != "no";
    const MetricsLog log =
        run_simulation(*bundle.net, *bundle.w, frame, source, *bundle.oracle, options);

    save_metrics_frames_file(out_dir / "frames.txt", log);
    save_metrics_packets_file(out_dir / "packets.txt", log);
    Config summary;
    summary.set("scheduler", desc.name);
    summary.set("seed", std::to_string(options.seed));
    summary.set("m", std::to_string(m));
    summary.set("epsilon", format_number(frame_epsilon));
    summary.set("lambda", format_number(frame.lambda));
    summary.set("T", std::to_string(frame.T));
    summary.set("J", format_number(frame.J));
    summary.set("t_prime", std::to_string(frame.t_prime));
    summary.set("cleanup_slots", std::to_string(frame.cleanup_slots));
    summary.set("out_of_theory", frame.override_t ? "yes" : "no");
    if (wrapper) summary.set("wrapper_delta_max", std::to_string(wrapper->delta_max));
    summary.set("horizon_frames", std::to_string(options.horizon_frames));
    summary.set("injected", std::to_string(log.injected_total));
    summary.set("delivered", std::to_string(log.delivered_total));
    atomic_write_file(out_dir / "dynamic-summary.cfg", summary.serialize());
    std::cout << "T = " << frame.T << ", frames = " << options.horizon_frames
              << ", injected = " << log.injected_total << ", delivered = "
              << log.delivered_total
              << (frame.override_t ? " (out-of-theory frame length)" : "") << "\n";
    return 0;
}

int cmd_validate_trace(const fs::path& config_path, const std::optional<fs::path>& out_dir) {
    const Config cfg = Config::parse_file(config_path);
    const fs::path base = config_path.parent_path();
    const ModelBundle bundle = load_model(cfg, base);
    const AdversarialTrace trace =
        load_trace_file(resolve(base, cfg.get("trace")), *bundle.net);
    const WindowCheck check = validate_window_trace(trace, *bundle.w);

    if (out_dir) {
        Config report;
        report.set("injections", std::to_string(trace.injections.size()));
        report.set("window", std::to_string(trace.window));
        report.set("rate", format_number(trace.rate));
        report.set("ok", check.ok ? "yes" : "no");
        if (!check.ok) {
            report.set("first_violating_window", std::to_string(check.first_violating_window));
            report.set("measure", format_number(check.measure));
        }
        atomic_write_file(*out_dir / "trace-report.cfg", report.serialize());
    }
    if (check.ok) {
        std::cout << "trace ok: " << trace.injections.size() << " injections respect ||W R|| <= "
                  << format_number(static_cast<double>(trace.window) * trace.rate)
                  << " per window\n";
        return 0;
    }
    std::cout << "trace invalid: window starting at slot " << check.first_violating_window
              << " carries measure " << format_number(check.measure) << " > "
              << format_number(static_cast<double>(trace.window) * trace.rate) << "\n";
    return 1;
}

int cmd_experiment(const std::string& name, std::uint64_t seed, int jobs,
                   const std::optional<fs::path>& out_dir) {
    const auto& registry = experiment_registry();
    const auto it = registry.find(name);
    if (it == registry.end()) {
        std::cerr << "unknown experiment '" << name << "'; registered:";
        for (const auto& [key, fn] : registry) std::cerr << " " << key;
        std::cerr << "\n";
        return 1;
    }
    const ExperimentReport report = it->second(seed, jobs);
    const std::string text = format_report(report);
    std::cout << text;
    if (out_dir) {
        atomic_write_file(*out_dir / "report.txt", text);
        Config machine;
        machine.set("scenario", report.scenario);
        machine.set("overall", report.all_pass() ? "pass" : "fail");
        for (std::size_t i = 0; i < report.criteria.size(); ++i) {
            const auto& c = report.criteria[i];
            const std::string prefix = "criterion." + std::to_string(i) + ".";
            machine.set(prefix + "name", c.name);
            machine.set(prefix + "pass", c.pass ? "yes" : "no");
            machine.set(prefix + "estimate", format_number(c.estimate));
            machine.set(prefix + "lo", format_number(c.lo));
            machine.set(prefix + "hi", format_number(c.hi));
            machine.set(prefix + "threshold", format_number(c.threshold));
            machine.set(prefix + "samples", std::to_string(c.samples));
        }
        atomic_write_file(*out_dir / "report.cfg", machine.serialize());
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"discrete-time scheduling simulator for interference-limited networks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string experiment_name;
    std::int64_t seed_value = 0;
    std::int64_t override_value = 0;
    int jobs = 1;

    auto* build = app.add_subcommand("build-matrix", "construct and validate the W matrix");
    build->add_option("--config", config_path, "scenario config file")->required();
    build->add_option("--out", out_dir, "output directory");

    auto* run_static = app.add_subcommand("run-static", "run a scheduler on a request file");
    run_static->add_option("--config", config_path, "scenario config file")->required();
    auto* static_seed = run_static->add_option("--seed", seed_value, "master seed override");
    run_static->add_option("--out", out_dir, "output directory");

    auto* run_dynamic = app.add_subcommand("run-dynamic", "run the frame protocol");
    run_dynamic->add_option("--config", config_path, "scenario config file")->required();
    auto* dynamic_seed = run_dynamic->add_option("--seed", seed_value, "master seed override");
    run_dynamic->add_option("--out", out_dir, "output directory");
    auto* dynamic_override = run_dynamic->add_option(
        "--override-T", override_value, "forced frame length, flagged out-of-theory");

    auto* validate = app.add_subcommand("validate-trace", "check a trace's window bound");
    validate->add_option("--config", config_path, "scenario config file")->required();
    auto* validate_out = validate->add_option("--out", out_dir, "output directory");

    auto* experiment = app.add_subcommand("experiment", "run a named acceptance scenario");
    experiment->add_option("name", experiment_name, "registered experiment name")->required();
    auto* experiment_seed = experiment->add_option("--seed", seed_value, "base seed");
    experiment->add_option("--jobs", jobs, "worker threads for seed fan-out");
    auto* experiment_out = experiment->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*build) return cmd_build_matrix(config_path, out_dir);
        if (*run_static) {
            std::optional<std::uint64_t> seed;
            if (*static_seed) seed = static_cast<std::uint64_t>(seed_value);
            return cmd_run_static(config_path, out_dir, seed);
        }
        if (*run_dynamic) {
            std::optional<std::uint64_t> seed;
            if (*dynamic_seed) seed = static_cast<std::uint64_t>(seed_value);
            std::optional<std::int64_t> override_t;
            if (*dynamic_override) override_t = override_value;
            return cmd_run_dynamic(config_path, out_dir, seed, override_t);
        }
        if (*validate) {
            std::optional<fs::path> out;
            if (*validate_out) out = fs::path(out_dir);
            return cmd_validate_trace(config_path, out);
        }
        if (*experiment) {
            const std::uint64_t seed =
                *experiment_seed ? static_cast<std::uint64_t>(seed_value) : 1;
            std::optional<fs::path> out;
            if (*experiment_out) out = fs::path(out_dir);
            return cmd_experiment(experiment_name, seed, jobs, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace dynsched
