// File formats: round-trips for every artifact, line-numbered parse errors,
// config semantics and the atomic write path.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "dynsched/io.hpp"

using namespace dynsched;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("dynsched-io-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

NetworkInstance tiny_network() {
    std::vector<std::string> nodes{"a", "b", "c"};
    std::vector<Link> links{Link{0, 1}, Link{1, 2}};
    return NetworkInstance(std::move(nodes), std::move(links), 2);
}

}  // namespace

TEST_CASE("numbers carry nine significant digits") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(42.0) == "42");
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(1e-10) == "1e-10");
    CHECK(format_number(123456789.25) == "123456789");
}

TEST_CASE("network files round-trip") {
    const NetworkInstance net = tiny_network();
    std::ostringstream out;
    save_network(out, net);
    std::istringstream in(out.str());
    const NetworkInstance back = load_network(in);
    CHECK(back.node_count() == 3);
    CHECK(back.link_count() == 2);
    CHECK(back.max_path_length() == 2);
    CHECK(back.node_name(0) == "a");
    CHECK(back.node_name(2) == "c");
    CHECK(back.link(0).sender == 0);
    CHECK(back.link(0).receiver == 1);
    CHECK(back.link(1).sender == 1);
    CHECK(back.link(1).receiver == 2);
}

TEST_CASE("network parse errors carry the line number") {
    std::istringstream bad_receiver("max-path-length 1\nnode a\n\nlink a z\n");
    CHECK_THROWS_WITH_AS(load_network(bad_receiver),
                         doctest::Contains("network line 4: unknown receiver 'z'"),
                         std::runtime_error);
    std::istringstream duplicate("max-path-length 1\nnode a\nnode a\n");
    CHECK_THROWS_WITH_AS(load_network(duplicate), doctest::Contains("duplicate node"),
                         std::runtime_error);
    std::istringstream no_bound("node a\n");
    CHECK_THROWS_WITH_AS(load_network(no_bound), doctest::Contains("max-path-length"),
                         std::runtime_error);
    std::istringstream junk("max-path-length 1\nwidget 3\n");
    CHECK_THROWS_WITH_AS(load_network(junk), doctest::Contains("line 2"),
                         std::runtime_error);
}

TEST_CASE("geometry loads positions or a distance table") {
    std::vector<std::string> nodes{"a", "b"};
    std::vector<Link> links{Link{0, 1}};
    const NetworkInstance net(std::move(nodes), std::move(links), 1);

    std::istringstream points("positions\npoint 0 0\npoint 3 4\n");
    const GeometricInstance from_points = load_geometry(points, net);
    CHECK(from_points.distance(0, 1) == doctest::Approx(5.0));

    std::istringstream table("distances\nrow 0 2.5\nrow 2.5 0\n");
    const GeometricInstance from_table = load_geometry(table, net);
    CHECK(from_table.distance(1, 0) == doctest::Approx(2.5));

    std::istringstream short_points("positions\npoint 0 0\n");
    CHECK_THROWS_WITH_AS(load_geometry(short_points, net),
                         doctest::Contains("1 points for 2 nodes"), std::runtime_error);
    std::istringstream ragged("distances\nrow 0 1\nrow 1\n");
    CHECK_THROWS_WITH_AS(load_geometry(ragged, net), doctest::Contains("square"),
                         std::runtime_error);
    std::istringstream empty("");
    CHECK_THROWS_WITH_AS(load_geometry(empty, net), doctest::Contains("empty"),
                         std::runtime_error);
    std::istringstream header("grid\n");
    CHECK_THROWS_WITH_AS(load_geometry(header, net),
                         doctest::Contains("'positions' or 'distances'"), std::runtime_error);
    std::istringstream bad_number("positions\npoint 0 x\npoint 1 1\n");
    CHECK_THROWS_WITH_AS(load_geometry(bad_number, net),
                         doctest::Contains("line 2: expected a number"), std::runtime_error);
}

TEST_CASE("injection specs round-trip") {
    const NetworkInstance net = tiny_network();
    std::istringstream in(
        "generator\n"
        "outcome 0.5 0 1\n"
        "outcome 0.25 0\n"
        "generator\n"
        "outcome 0.75 1\n");
    const StochasticInjectionSpec spec = load_injection_spec(in, net);
    REQUIRE(spec.generators.size() == 2);
    REQUIRE(spec.generators[0].outcomes.size() == 2);
    CHECK(spec.generators[0].outcomes[0].probability == doctest::Approx(0.5));
    CHECK(spec.generators[0].outcomes[0].path->hops == std::vector<LinkId>{0, 1});
    CHECK(spec.generators[1].outcomes[0].path->hops == std::vector<LinkId>{1});

    std::ostringstream out;
    save_injection_spec(out, spec);
    std::istringstream again(out.str());
    const StochasticInjectionSpec back = load_injection_spec(again, net);
    REQUIRE(back.generators.size() == 2);
    CHECK(back.generators[0].outcomes[1].probability == doctest::Approx(0.25));
    CHECK(back.generators[1].outcomes[0].probability == doctest::Approx(0.75));

    std::istringstream orphan("outcome 0.5 0\n");
    CHECK_THROWS_WITH_AS(load_injection_spec(orphan, net),
                         doctest::Contains("before any 'generator'"), std::runtime_error);
    std::istringstream bad_path("generator\noutcome 0.5 7\n");
    CHECK_THROWS_AS(load_injection_spec(bad_path, net), std::invalid_argument);
    std::istringstream overweight("generator\noutcome 0.9 0\noutcome 0.9 1\n");
    CHECK_THROWS_AS(load_injection_spec(overweight, net), std::invalid_argument);
}

TEST_CASE("traces round-trip and share repeated paths") {
    const NetworkInstance net = tiny_network();
    std::istringstream in(
        "window 10\n"
        "rate 0.25\n"
        "inject 0 0 1\n"
        "inject 4 1\n"
        "inject 12 0 1\n");
    const AdversarialTrace trace = load_trace(in, net);
    CHECK(trace.window == 10);
    CHECK(trace.rate == doctest::Approx(0.25));
    REQUIRE(trace.injections.size() == 3);
    CHECK(trace.injections[1].slot == 4);
    // identical hop lists collapse to one shared path object
    CHECK(trace.injections[0].path == trace.injections[2].path);
    CHECK(trace.injections[0].path != trace.injections[1].path);

    std::ostringstream out;
    save_trace(out, trace);
    std::istringstream again(out.str());
    const AdversarialTrace back = load_trace(again, net);
    REQUIRE(back.injections.size() == 3);
    CHECK(back.injections[2].slot == 12);
    CHECK(back.injections[2].path->hops == std::vector<LinkId>{0, 1});

    std::istringstream unsorted("window 4\nrate 1\ninject 9 0\ninject 3 0\n");
    CHECK_THROWS_WITH_AS(load_trace(unsorted, net), doctest::Contains("nondecreasing"),
                         std::runtime_error);
    std::istringstream no_window("rate 1\ninject 0 0\n");
    CHECK_THROWS_WITH_AS(load_trace(no_window, net), doctest::Contains("'window'"),
                         std::runtime_error);
    std::istringstream no_rate("window 4\ninject 0 0\n");
    CHECK_THROWS_WITH_AS(load_trace(no_rate, net), doctest::Contains("'rate'"),
                         std::runtime_error);
}

TEST_CASE("matrices round-trip sparsely") {
    InterferenceMatrix w(3);
    w.set(0, 0, 1.0);
    w.set(1, 1, 1.0);
    w.set(2, 2, 1.0);
    w.set(0, 2, 1.0 / 3.0);
    w.set(2, 1, 0.125);
    std::ostringstream out;
    save_matrix(out, w);
    std::istringstream in(out.str());
    const InterferenceMatrix back = load_matrix(in);
    CHECK(back.size() == 3);
    CHECK(back.at(0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(back.at(2, 1) == doctest::Approx(0.125));
    CHECK(back.at(1, 0) == 0.0);
    CHECK(back.nonzero_count() == 5);

    std::istringstream outside("matrix 2\nentry 2 0 1\n");
    CHECK_THROWS_WITH_AS(load_matrix(outside), doctest::Contains("(2, 0) outside"),
                         std::runtime_error);
    std::istringstream header("entries 2\n");
    CHECK_THROWS_WITH_AS(load_matrix(header), doctest::Contains("'matrix n'"),
                         std::runtime_error);
    std::istringstream empty("");
    CHECK_THROWS_WITH_AS(load_matrix(empty), doctest::Contains("empty"), std::runtime_error);
}

TEST_CASE("metrics files carry one row per frame and per packet") {
    const fs::path dir = fresh_dir("metrics");
    MetricsLog log;
    FrameReport r0;
    r0.frame = 0;
    r0.injections = 2;
    r0.admitted = 1;
    r0.deliveries = 1;
    r0.phase1_served = 1;
    r0.backlog = 1;
    r0.potential = 0;
    FrameReport r1;
    r1.frame = 1;
    r1.new_failures = 1;
    r1.new_failed_mass = 3;
    r1.cleanup_successes = 1;
    r1.backlog = 2;
    r1.failed_backlog = 1;
    r1.potential = 2;
    log.per_frame = {r0, r1};
    PacketRow row;
    row.id = 7;
    row.d = 2;
    row.injection_slot = 13;
    row.delivery_slot = 41;
    row.ever_failed = true;
    log.per_packet = {row};

    save_metrics_frames_file(dir / "frames.txt", log);
    const std::string frames = slurp(dir / "frames.txt");
    CHECK(frames.find("# frame injections admitted deliveries") == 0);
    CHECK(frames.find("\n0 2 1 1 1 0 0 0 1 0 0\n") != std::string::npos);
    CHECK(frames.find("\n1 0 0 0 0 1 3 1 2 1 2\n") != std::string::npos);

    save_metrics_packets_file(dir / "packets.txt", log);
    const std::string packets = slurp(dir / "packets.txt");
    CHECK(packets.find("# id d injection_slot delivery_slot ever_failed") == 0);
    CHECK(packets.find("\n7 2 13 41 1\n") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("config keeps order, comments and override semantics") {
    std::istringstream in(
        "alpha = 2.5   # path loss\n"
        "\n"
        "name = run one\n"
        "alpha = 3\n"
        "count = 12\n"
        "ratio = 2.5\n");
    const Config config = Config::parse(in);
    CHECK(config.has("alpha"));
    CHECK(!config.has("beta"));
    CHECK(config.get("alpha") == "3");  // last occurrence wins
    CHECK(config.get("name") == "run one");
    CHECK(config.get_or("beta", "1.5") == "1.5");
    CHECK(config.get_double("alpha") == doctest::Approx(3.0));
    CHECK(config.get_int("count") == 12);
    CHECK(config.entries().size() == 5);

    CHECK_THROWS_WITH_AS(config.get("beta"), doctest::Contains("'beta' is missing"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(config.get_double("name"), doctest::Contains("not a number"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(config.get_int("ratio"), doctest::Contains("not an integer"),
                         std::runtime_error);
}

TEST_CASE("config serialization is a fixed point") {
    std::istringstream in("a = 1\nb = two words\na = 3\n");
    const Config config = Config::parse(in);
    std::istringstream round(config.serialize());
    const Config again = Config::parse(round);
    CHECK(again.entries() == config.entries());
    CHECK(again.serialize() == config.serialize());
}

TEST_CASE("config set overrides the winning occurrence") {
    std::istringstream in("a = 1\na = 2\n");
    Config config = Config::parse(in);
    config.set("a", "9");
    CHECK(config.get("a") == "9");
    CHECK(config.entries().size() == 2);  // rewrote the last occurrence in place
    config.set("fresh", "x");
    CHECK(config.entries().size() == 3);
    CHECK(config.get("fresh") == "x");
}

TEST_CASE("config parse errors name the line") {
    std::istringstream missing_eq("a = 1\nnot a pair\n");
    CHECK_THROWS_WITH_AS(Config::parse(missing_eq),
                         doctest::Contains("config line 2: expected 'key = value'"),
                         std::runtime_error);
    std::istringstream empty_key(" = 1\n");
    CHECK_THROWS_WITH_AS(Config::parse(empty_key), doctest::Contains("empty key"),
                         std::runtime_error);
}

TEST_CASE("atomic writes create parents and replace targets") {
    const fs::path dir = fresh_dir("atomic");
    const fs::path target = dir / "deep" / "nested" / "file.txt";
    atomic_write_file(target, "first\n");
    CHECK(slurp(target) == "first\n");
    atomic_write_file(target, "second\n");
    CHECK(slurp(target) == "second\n");
    CHECK(!fs::exists(target.string() + ".tmp"));
    fs::remove_all(dir);
}

TEST_CASE("file loaders report unopenable paths") {
    const fs::path missing = fs::temp_directory_path() / "dynsched-io-missing" / "nope.txt";
    CHECK_THROWS_WITH_AS(load_network_file(missing), doctest::Contains("cannot open"),
                         std::runtime_error);
    CHECK_THROWS_AS(load_matrix_file(missing), std::runtime_error);
    CHECK_THROWS_AS(Config::parse_file(missing), std::runtime_error);
}

TEST_CASE("saved network files load back through the file api") {
    const fs::path dir = fresh_dir("files");
    const NetworkInstance net = tiny_network();
    save_network_file(dir / "net.txt", net);
    const NetworkInstance back = load_network_file(dir / "net.txt");
    CHECK(back.link_count() == 2);

    InterferenceMatrix w(2);
    w.set(0, 0, 1.0);
    w.set(1, 1, 1.0);
    w.set(0, 1, 0.5);
    save_matrix_file(dir / "w.txt", w);
    CHECK(load_matrix_file(dir / "w.txt").at(0, 1) == doctest::Approx(0.5));

    AdversarialTrace trace;
    trace.window = 5;
    trace.rate = 0.2;
    const auto path = std::make_shared<RoutePath>(RoutePath{{0}});
    trace.injections = {{0, path}, {5, path}};
    save_trace_file(dir / "trace.txt", trace);
    const AdversarialTrace back_trace = load_trace_file(dir / "trace.txt", net);
    CHECK(back_trace.injections.size() == 2);
    CHECK(back_trace.window == 5);
    fs::remove_all(dir);
}
