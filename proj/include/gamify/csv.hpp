#pragma once
// CSV artifacts. Floats are written with 17 significant digits so every
// double survives a write/read cycle exactly.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "gamify/regression.hpp"
#include "gamify/simulator.hpp"

namespace gamify {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline constexpr std::string_view kDatasetHeader = "engagement,reward,retention";
inline constexpr std::string_view kSessionHeader = "task,engagement,reward,difficulty,success";
inline constexpr std::string_view kTimelineHeader =
    "step,engagement,skill,reward,difficulty,retention_prob,success,intervened";

inline void write_dataset_csv(std::ostream& os, std::span<const Sample> d) {
    os << kDatasetHeader << '\n';
    for (const auto& r : d) {
        os << format_double(r.engagement) << ',' << format_double(r.reward) << ',' << r.retention
           << '\n';
    }
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
T parse_field(std::string_view s, std::size_t line_no) {
    T value{};
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw IoError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(s) + "'");
    }
    return value;
}

inline std::string_view chomp(const std::string& line) {
    std::string_view v = line;
    if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
    return v;
}

}  // namespace detail

inline Dataset read_dataset_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || detail::chomp(line) != kDatasetHeader) {
        throw IoError("dataset csv: expected header '" + std::string(kDatasetHeader) + "'");
    }
    Dataset d;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        const auto v = detail::chomp(line);
        if (v.empty()) continue;
        const auto f = detail::split_fields(v);
        if (f.size() != 3) throw IoError("line " + std::to_string(line_no) + ": expected 3 fields");
        Sample s;
        s.engagement = detail::parse_field<double>(f[0], line_no);
        s.reward = detail::parse_field<double>(f[1], line_no);
        s.retention = detail::parse_field<int>(f[2], line_no);
        if (s.retention != 0 && s.retention != 1) {
            throw IoError("line " + std::to_string(line_no) + ": label must be 0 or 1");
        }
        if (!std::isfinite(s.engagement) || !std::isfinite(s.reward)) {
            throw IoError("line " + std::to_string(line_no) + ": non-finite feature");
        }
        d.push_back(s);
    }
    if (d.empty()) throw IoError("dataset csv: no rows");
    return d;
}

inline void write_session_csv(std::ostream& os, std::span<const SessionStep> steps) {
    os << kSessionHeader << '\n';
    for (const auto& s : steps) {
        os << s.task_index << ',' << format_double(s.engagement) << ',' << format_double(s.reward)
           << ',' << format_double(s.difficulty) << ',' << (s.success ? 1 : 0) << '\n';
    }
}

inline void write_timeline_csv(std::ostream& os, std::span<const TimelinePoint> points) {
    os << kTimelineHeader << '\n';
    for (const auto& p : points) {
        os << p.step << ',' << format_double(p.engagement) << ',' << format_double(p.skill) << ','
           << format_double(p.reward_granted) << ',' << format_double(p.difficulty) << ','
           << format_double(p.retention_prob) << ',' << (p.success ? 1 : 0) << ','
           << (p.intervened ? 1 : 0) << '\n';
    }
}

inline void write_confusion_csv(std::ostream& os, const ConfusionMatrix& cm) {
    os << "true_label,predicted_0,predicted_1\n";
    os << "0," << cm.tn << ',' << cm.fp << '\n';
    os << "1," << cm.fn << ',' << cm.tp << '\n';
}

// Writes through `fn(std::ostream&)` into `path`, failing loudly.
template <typename Fn>
void write_file(const std::string& path, Fn&& fn) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    fn(os);
    os.flush();
    if (!os) throw IoError("write to '" + path + "' failed");
}

}  // namespace gamify
