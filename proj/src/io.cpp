#include "dynsched/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace dynsched {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// strips comments and blank lines, tracks line numbers for error context
class LineReader {
public:
    LineReader(std::istream& in, std::string context) : in_(in), context_(std::move(context)) {}

    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            out = trim(raw);
            if (!out.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw std::runtime_error(context_ + " line " + std::to_string(line_) + ": " + message);
    }

private:
    std::istream& in_;
    std::string context_;
    int line_ = 0;
};

double parse_double(const LineReader& reader, const std::string& token) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) reader.fail("trailing characters in number '" + token + "'");
        return v;
    } catch (const std::logic_error&) {
        reader.fail("expected a number, got '" + token + "'");
    }
}

std::int64_t parse_int(const LineReader& reader, const std::string& token) {
    try {
        std::size_t used = 0;
        const std::int64_t v = std::stoll(token, &used);
        if (used != token.size()) reader.fail("trailing characters in integer '" + token + "'");
        return v;
    } catch (const std::logic_error&) {
        reader.fail("expected an integer, got '" + token + "'");
    }
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

std::ifstream open_input(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    return in;
}

RoutePath parse_hops(const LineReader& reader, const std::vector<std::string>& tokens,
                     std::size_t from) {
    RoutePath path;
    for (std::size_t i = from; i < tokens.size(); ++i)
        path.hops.push_back(static_cast<LinkId>(parse_int(reader, tokens[i])));
    return path;
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

NetworkInstance load_network(std::istream& in) {
    LineReader reader(in, "network");
    std::vector<std::string> nodes;
    std::map<std::string, int> index;
    std::vector<Link> links;
    std::optional<int> max_path;
    std::string line;
    while (reader.next(line)) {
        const auto tokens = split(line);
        if (tokens[0] == "max-path-length" && tokens.size() == 2) {
            max_path = static_cast<int>(parse_int(reader, tokens[1]));
        } else if (tokens[0] == "node" && tokens.size() == 2) {
            if (index.count(tokens[1])) reader.fail("duplicate node '" + tokens[1] + "'");
            index.emplace(tokens[1], static_cast<int>(nodes.size()));
            nodes.push_back(tokens[1]);
        } else if (tokens[0] == "link" && tokens.size() == 3) {
            const auto s = index.find(tokens[1]);
            const auto r = index.find(tokens[2]);
            if (s == index.end()) reader.fail("unknown sender '" + tokens[1] + "'");
            if (r == index.end()) reader.fail("unknown receiver '" + tokens[2] + "'");
            links.push_back(Link{s->second, r->second});
        } else {
            reader.fail("expected 'max-path-length', 'node' or 'link', got '" + line + "'");
        }
    }
    if (!max_path) reader.fail("missing 'max-path-length'");
    return NetworkInstance(std::move(nodes), std::move(links), *max_path);
}

NetworkInstance load_network_file(const std::filesystem::path& p) {
    auto in = open_input(p);
    return load_network(in);
}

void save_network(std::ostream& out, const NetworkInstance& net) {
    out << "max-path-length " << net.max_path_length() << "\n";
    for (int v = 0; v < net.node_count(); ++v) out << "node " << net.node_name(v) << "\n";
    for (LinkId e = 0; e < net.link_count(); ++e)
        out << "link " << net.node_name(net.link(e).sender) << " "
            << net.node_name(net.link(e).receiver) << "\n";
}

void save_network_file(const std::filesystem::path& p, const NetworkInstance& net) {
    std::ostringstream out;
    save_network(out, net);
    atomic_write_file(p, out.str());
}

GeometricInstance load_geometry(std::istream& in, const NetworkInstance& net) {
    LineReader reader(in, "geometry");
    std::string line;
    if (!reader.next(line)) reader.fail("empty geometry file");
    const auto header = split(line);
    if (header[0] == "positions" && header.size() == 1) {
        std::vector<std::array<double, 2>> positions;
        while (reader.next(line)) {
            const auto tokens = split(line);
            if (tokens[0] != "point" || tokens.size() != 3)
                reader.fail("expected 'point x y', got '" + line + "'");
            positions.push_back({parse_double(reader, tokens[1]),
                                 parse_double(reader, tokens[2])});
        }
        if (static_cast<int>(positions.size()) != net.node_count())
            reader.fail("geometry has " + std::to_string(positions.size()) + " points for " +
                        std::to_string(net.node_count()) + " nodes");
        return GeometricInstance::from_positions(std::move(positions));
    }
    if (header[0] == "distances" && header.size() == 1) {
        std::vector<std::vector<double>> table;
        while (reader.next(line)) {
            const auto tokens = split(line);
            if (tokens[0] != "row") reader.fail("expected 'row d0 d1 ...', got '" + line + "'");
            std::vector<double> row;
            for (std::size_t i = 1; i < tokens.size(); ++i)
                row.push_back(parse_double(reader, tokens[i]));
            table.push_back(std::move(row));
        }
        if (static_cast<int>(table.size()) != net.node_count())
            reader.fail("distance table has " + std::to_string(table.size()) + " rows for " +
                        std::to_string(net.node_count()) + " nodes");
        for (const auto& row : table)
            if (row.size() != table.size()) reader.fail("distance table is not square");
        return GeometricInstance::from_distance_table(std::move(table));
    }
    reader.fail("geometry header must be 'positions' or 'distances'");
}

GeometricInstance load_geometry_file(const std::filesystem::path& p,
                                     const NetworkInstance& net) {
    auto in = open_input(p);
    return load_geometry(in, net);
}

StochasticInjectionSpec load_injection_spec(std::istream& in, const NetworkInstance& net) {
    LineReader reader(in, "injection spec");
    StochasticInjectionSpec spec;
    std::string line;
    while (reader.next(line)) {
        const auto tokens = split(line);
        if (tokens[0] == "generator" && tokens.size() == 1) {
            spec.generators.emplace_back();
        } else if (tokens[0] == "outcome" && tokens.size() >= 3) {
            if (spec.generators.empty()) reader.fail("'outcome' before any 'generator'");
            RoutePath path = parse_hops(reader, tokens, 2);
            validate_path(net, path);
            spec.generators.back().outcomes.push_back(
                WeightedPath{std::make_shared<RoutePath>(std::move(path)),
                             parse_double(reader, tokens[1])});
        } else {
            reader.fail("expected 'generator' or 'outcome p hops...', got '" + line + "'");
        }
    }
    spec.validate(net.link_count());
    return spec;
}

StochasticInjectionSpec load_injection_spec_file(const std::filesystem::path& p,
                                                 const NetworkInstance& net) {
    auto in = open_input(p);
    return load_injection_spec(in, net);
}

void save_injection_spec(std::ostream& out, const StochasticInjectionSpec& spec) {
    for (const auto& gen : spec.generators) {
        out << "generator\n";
        for (const auto& outcome : gen.outcomes) {
            out << "outcome " << format_number(outcome.probability);
            for (const LinkId hop : outcome.path->hops) out << " " << hop;
            out << "\n";
        }
    }
}

AdversarialTrace load_trace(std::istream& in, const NetworkInstance& net) {
    LineReader reader(in, "trace");
    AdversarialTrace trace;
    bool saw_window = false, saw_rate = false;
    // identical hop lists share one path object
    std::map<std::vector<LinkId>, std::shared_ptr<const RoutePath>> cache;
    std::string line;
    while (reader.next(line)) {
        const auto tokens = split(line);
        if (tokens[0] == "window" && tokens.size() == 2) {
            trace.window = parse_int(reader, tokens[1]);
            saw_window = true;
        } else if (tokens[0] == "rate" && tokens.size() == 2) {
            trace.rate = parse_double(reader, tokens[1]);
            saw_rate = true;
        } else if (tokens[0] == "inject" && tokens.size() >= 3) {
            const std::int64_t slot = parse_int(reader, tokens[1]);
            RoutePath path = parse_hops(reader, tokens, 2);
            validate_path(net, path);
            auto& shared = cache[path.hops];
            if (!shared) shared = std::make_shared<RoutePath>(std::move(path));
            if (!trace.injections.empty() && slot < trace.injections.back().slot)
                reader.fail("injection slots must be nondecreasing");
            trace.injections.push_back(Injection{slot, shared});
        } else {
            reader.fail("expected 'window', 'rate' or 'inject slot hops...', got '" + line +
                        "'");
        }
    }
    if (!saw_window) reader.fail("missing 'window'");
    if (!saw_rate) reader.fail("missing 'rate'");
    return trace;
}

AdversarialTrace load_trace_file(const std::filesystem::path& p, const NetworkInstance& net) {
    auto in = open_input(p);
    return load_trace(in, net);
}

void save_trace(std::ostream& out, const AdversarialTrace& trace) {
    out << "window " << trace.window << "\n";
    out << "rate " << format_number(trace.rate) << "\n";
    for (const auto& injection : trace.injections) {
        out << "inject " << injection.slot;
        for (const LinkId hop : injection.path->hops) out << " " << hop;
        out << "\n";
    }
}

void save_trace_file(const std::filesystem::path& p, const AdversarialTrace& trace) {
    std::ostringstream out;
    save_trace(out, trace);
    atomic_write_file(p, out.str());
}

InterferenceMatrix load_matrix(std::istream& in) {
    LineReader reader(in, "matrix");
    std::string line;
    if (!reader.next(line)) reader.fail("empty matrix file");
    const auto header = split(line);
    if (header[0] != "matrix" || header.size() != 2)
        reader.fail("expected 'matrix n', got '" + line + "'");
    InterferenceMatrix w(static_cast<int>(parse_int(reader, header[1])));
    while (reader.next(line)) {
        const auto tokens = split(line);
        if (tokens[0] != "entry" || tokens.size() != 4)
            reader.fail("expected 'entry row col value', got '" + line + "'");
        const int row = static_cast<int>(parse_int(reader, tokens[1]));
        const int col = static_cast<int>(parse_int(reader, tokens[2]));
        if (row < 0 || row >= w.size() || col < 0 || col >= w.size())
            reader.fail("entry (" + tokens[1] + ", " + tokens[2] + ") outside the matrix");
        w.set(row, col, parse_double(reader, tokens[3]));
    }
    return w;
}

InterferenceMatrix load_matrix_file(const std::filesystem::path& p) {
    auto in = open_input(p);
    return load_matrix(in);
}

void save_matrix(std::ostream& out, const InterferenceMatrix& w) {
    out << "matrix " << w.size() << "\n";
    for (int r = 0; r < w.size(); ++r)
        for (const auto& entry : w.row(r))
            out << "entry " << r << " " << entry.col << " " << format_number(entry.value)
                << "\n";
}

void save_matrix_file(const std::filesystem::path& p, const InterferenceMatrix& w) {
    std::ostringstream out;
    save_matrix(out, w);
    atomic_write_file(p, out.str());
}

void save_metrics_frames_file(const std::filesystem::path& p, const MetricsLog& log) {
    std::ostringstream out;
    out << "# frame injections admitted deliveries phase1_served new_failures"
           " new_failed_mass cleanup_successes backlog failed_backlog potential\n";
    for (const auto& r : log.per_frame)
        out << r.frame << " " << r.injections << " " << r.admitted << " " << r.deliveries
            << " " << r.phase1_served << " " << r.new_failures << " " << r.new_failed_mass
            << " " << r.cleanup_successes << " " << r.backlog << " " << r.failed_backlog
            << " " << r.potential << "\n";
    atomic_write_file(p, out.str());
}

void save_metrics_packets_file(const std::filesystem::path& p, const MetricsLog& log) {
    std::ostringstream out;
    out << "# id d injection_slot delivery_slot ever_failed\n";
    for (const auto& r : log.per_packet)
        out << r.id << " " << r.d << " " << r.injection_slot << " " << r.delivery_slot << " "
            << (r.ever_failed ? 1 : 0) << "\n";
    atomic_write_file(p, out.str());
}

Config Config::parse(std::istream& in) {
    Config config;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line) +
                                     ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(line) + ": empty key");
        config.entries_.emplace_back(key, value);
    }
    return config;
}

Config Config::parse_file(const std::filesystem::path& p) {
    auto in = open_input(p);
    return parse(in);
}

std::string Config::serialize() const {
    std::string out;
    for (const auto& [key, value] : entries_) out += key + " = " + value + "\n";
    return out;
}

bool Config::has(const std::string& key) const {
    for (const auto& entry : entries_)
        if (entry.first == key) return true;
    return false;
}

std::string Config::get(const std::string& key) const {
    // the last occurrence wins, so later lines can override earlier ones
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
        if (it->first == key) return it->second;
    throw std::runtime_error("config key '" + key + "' is missing");
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
}

double Config::get_double(const std::string& key) const {
    const std::string value = get(key);
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::logic_error&) {
        throw std::runtime_error("config key '" + key + "' is not a number: '" + value + "'");
    }
}

std::int64_t Config::get_int(const std::string& key) const {
    const std::string value = get(key);
    try {
        std::size_t used = 0;
        const std::int64_t v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::logic_error&) {
        throw std::runtime_error("config key '" + key + "' is not an integer: '" + value +
                                 "'");
    }
}

void Config::set(const std::string& key, const std::string& value) {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
        if (it->first == key) {
            it->second = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

void atomic_write_file(const std::filesystem::path& p, const std::string& content) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    const std::filesystem::path tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, p);
}

}  // namespace dynsched
