#pragma once

// Line-oriented file formats for networks, geometry, injection specs, traces,
// matrices, metrics logs and scenario configs. All writes go through a
// temporary file and an atomic rename; numbers carry 9 significant digits.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dynsched/core.hpp"
#include "dynsched/geometry.hpp"
#include "dynsched/injection.hpp"
#include "dynsched/protocol.hpp"

namespace dynsched {

std::string format_number(double value);  // %.9g

NetworkInstance load_network(std::istream& in);
NetworkInstance load_network_file(const std::filesystem::path& p);
void save_network(std::ostream& out, const NetworkInstance& net);
void save_network_file(const std::filesystem::path& p, const NetworkInstance& net);

GeometricInstance load_geometry(std::istream& in, const NetworkInstance& net);
GeometricInstance load_geometry_file(const std::filesystem::path& p, const NetworkInstance& net);

StochasticInjectionSpec load_injection_spec(std::istream& in, const NetworkInstance& net);
StochasticInjectionSpec load_injection_spec_file(const std::filesystem::path& p,
                                                 const NetworkInstance& net);
void save_injection_spec(std::ostream& out, const StochasticInjectionSpec& spec);

AdversarialTrace load_trace(std::istream& in, const NetworkInstance& net);
AdversarialTrace load_trace_file(const std::filesystem::path& p, const NetworkInstance& net);
void save_trace(std::ostream& out, const AdversarialTrace& trace);
void save_trace_file(const std::filesystem::path& p, const AdversarialTrace& trace);

InterferenceMatrix load_matrix(std::istream& in);
InterferenceMatrix load_matrix_file(const std::filesystem::path& p);
void save_matrix(std::ostream& out, const InterferenceMatrix& w);
void save_matrix_file(const std::filesystem::path& p, const InterferenceMatrix& w);

void save_metrics_frames_file(const std::filesystem::path& p, const MetricsLog& log);
void save_metrics_packets_file(const std::filesystem::path& p, const MetricsLog& log);

// Flat ordered key = value pairs; '#' starts a comment. parse(serialize(parse(x)))
// equals parse(x).
class Config {
public:
    static Config parse(std::istream& in);
    static Config parse_file(const std::filesystem::path& p);
    std::string serialize() const;

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;  // throws when missing
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    const std::vector<std::pair<std::string, std::string>>& entries() const {
        return entries_;
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// Writes content to a sibling temporary file, then renames over the target.
void atomic_write_file(const std::filesystem::path& p, const std::string& content);

}  // namespace dynsched
