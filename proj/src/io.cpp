#include "gcff/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "gcff/errors.hpp"

namespace gcff {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(delim, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Reads lines, dropping a UTF-8 BOM and skipping blank lines. Returns false at
// end of input.
struct LineReader {
  std::istream& in;
  std::size_t number = 0;

  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++number;
      if (number == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
      if (!trim(line).empty()) return true;
    }
    return false;
  }
};

double parse_double(std::string_view s, const char* what, std::size_t line) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty()) {
    throw ParseError(std::string("malformed ") + what + " '" + std::string(s) +
                         "'",
                     line);
  }
  if (!std::isfinite(v)) {
    throw ParseError(std::string("non-finite ") + what, line);
  }
  return v;
}

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open '" + p.string() + "'");
  return in;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  return out;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), ptr);
}

std::vector<Scene> read_frames(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line)) return {};

  const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
  const auto header = split(line, delim);
  std::map<std::string, std::size_t> col;
  for (std::size_t k = 0; k < header.size(); ++k) col[lower(header[k])] = k;
  if (col.contains("theta_radians") && !col.contains("theta")) {
    col["theta"] = col["theta_radians"];
  }
  for (const char* name : {"frame_id", "person_id", "x", "y", "theta"}) {
    if (!col.contains(name)) {
      throw ParseError(std::string("header lacks column '") + name + "'",
                       reader.number);
    }
  }
  const std::size_t i_frame = col["frame_id"], i_person = col["person_id"],
                    i_x = col["x"], i_y = col["y"], i_theta = col["theta"];

  std::vector<std::string> order;
  std::map<std::string, std::vector<Person>> persons;
  std::set<std::pair<std::string, std::string>> seen;
  while (reader.next(line)) {
    const auto f = split(line, delim);
    if (f.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) +
                           " fields, got " + std::to_string(f.size()),
                       reader.number);
    }
    const std::string frame(f[i_frame]);
    const std::string id(f[i_person]);
    if (frame.empty() || id.empty()) {
      throw ParseError("empty frame or person id", reader.number);
    }
    if (!seen.emplace(frame, id).second) {
      throw ParseError("duplicate person '" + id + "' in frame '" + frame + "'",
                       reader.number);
    }
    const double x = parse_double(f[i_x], "x", reader.number);
    const double y = parse_double(f[i_y], "y", reader.number);
    const double theta = parse_double(f[i_theta], "theta", reader.number);
    if (!persons.contains(frame)) order.push_back(frame);
    persons[frame].emplace_back(id, x, y, theta);
  }

  std::vector<Scene> scenes;
  scenes.reserve(order.size());
  for (const auto& frame : order) {
    scenes.emplace_back(frame, std::move(persons[frame]));
  }
  return scenes;
}

std::vector<FrameGroups> read_groups(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line)) return {};
  const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
  const auto header = split(line, delim);
  if (header.size() != 2 || lower(header[0]) != "frame_id" ||
      lower(header[1]) != "members") {
    throw ParseError("group file header must be 'frame_id,members'",
                     reader.number);
  }

  std::vector<std::string> order;
  std::map<std::string, std::vector<Group>> groups;
  while (reader.next(line)) {
    const auto f = split(line, delim);
    if (f.size() != 2) {
      throw ParseError("expected 2 fields, got " + std::to_string(f.size()),
                       reader.number);
    }
    const std::string frame(f[0]);
    if (frame.empty()) throw ParseError("empty frame id", reader.number);
    if (!groups.contains(frame)) {
      order.push_back(frame);
      groups[frame];
    }
    if (f[1].empty()) continue;
    Group g;
    for (auto m : split(f[1], ';')) {
      if (m.empty()) throw ParseError("empty member id", reader.number);
      g.emplace_back(m);
    }
    if (g.size() < 2) {
      throw ParseError("group with fewer than two members", reader.number);
    }
    groups[frame].push_back(std::move(g));
  }

  std::vector<FrameGroups> out;
  for (const auto& frame : order) {
    try {
      out.emplace_back(frame, GroupSet(std::move(groups[frame])));
    } catch (const InvalidInput& e) {
      throw ParseError("frame '" + frame + "': " + e.what());
    }
  }
  return out;
}

void write_frames(std::ostream& out, const std::vector<Scene>& scenes) {
  out << "frame_id,person_id,x,y,theta\n";
  for (const auto& s : scenes) {
    for (const auto& p : s.persons()) {
      out << s.frame_id() << ',' << p.id() << ',' << format_number(p.x()) << ','
          << format_number(p.y()) << ',' << format_number(p.theta()) << '\n';
    }
  }
}

void write_groups(std::ostream& out, const std::vector<FrameGroups>& groups) {
  out << "frame_id,members\n";
  for (const auto& [frame, set] : groups) {
    if (set.empty()) {
      out << frame << ",\n";
      continue;
    }
    for (const auto& g : set.groups()) {
      out << frame << ',';
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (k) out << ';';
        out << g[k];
      }
      out << '\n';
    }
  }
}

std::vector<Scene> attach_groups(std::vector<Scene> scenes,
                                 const std::vector<FrameGroups>& groups) {
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < scenes.size(); ++k) index[scenes[k].frame_id()] = k;
  std::vector<std::optional<GroupSet>> gt(scenes.size());
  for (const auto& [frame, set] : groups) {
    const auto it = index.find(frame);
    if (it == index.end()) {
      throw InvalidInput("groups given for unknown frame '" + frame + "'");
    }
    gt[it->second] = set;
  }
  for (std::size_t k = 0; k < scenes.size(); ++k) {
    scenes[k] = scenes[k].with_ground_truth(gt[k].value_or(GroupSet{}));
  }
  return scenes;
}

std::vector<Scene> parse_frames(
    const std::filesystem::path& frames,
    const std::optional<std::filesystem::path>& groups) {
  auto in = open_in(frames);
  auto scenes = read_frames(in);
  if (groups) scenes = attach_groups(std::move(scenes), parse_groups(*groups));
  return scenes;
}

std::vector<FrameGroups> parse_groups(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_groups(in);
}

void save_frames(const std::filesystem::path& path,
                 const std::vector<Scene>& scenes) {
  auto out = open_out(path);
  write_frames(out, scenes);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
}

void save_groups(const std::filesystem::path& path,
                 const std::vector<FrameGroups>& groups) {
  auto out = open_out(path);
  write_groups(out, groups);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
}

void write_report(std::ostream& out, const EvalReport& r,
                  const std::string& label) {
  out << "# group detection report\n";
  out << "tolerance: " << fixed(r.tolerance) << '\n';
  out << "frames: " << r.frames.size() << '\n';
  out << "tp: " << r.total.tp << '\n';
  out << "fp: " << r.total.fp << '\n';
  out << "fn: " << r.total.fn << '\n';
  out << "precision: " << fixed(r.aggregate.precision) << '\n';
  out << "recall: " << fixed(r.aggregate.recall) << '\n';
  out << "f1: " << fixed(r.aggregate.f1) << '\n';
  if (r.gtm) {
    out << "gtm: " << fixed(*r.gtm) << '\n';
    out << "\n[f1_vs_tolerance]\n";
    out << "tolerance,f1\n";
    for (std::size_t k = 0; k < kGtmTolerances.size(); ++k) {
      out << fixed(kGtmTolerances[k]) << ',' << fixed((*r.gtm_curve)[k]) << '\n';
    }
  }

  out << "\n[frames]\n";
  out << "frame_id,tp,fp,fn,precision,recall,f1\n";
  for (const auto& f : r.frames) {
    out << f.frame_id << ',' << f.counts.tp << ',' << f.counts.fp << ','
        << f.counts.fn << ',' << fixed(f.rates.precision) << ','
        << fixed(f.rates.recall) << ',' << fixed(f.rates.f1) << '\n';
  }

  if (r.cardinality) {
    const auto& c = *r.cardinality;
    out << "\n[cardinality]\n";
    out << "cardinality,groups,tp,fp,fn,f1\n";
    for (const auto& row : c.rows) {
      out << row.cardinality << ',' << row.counts.tp + row.counts.fn << ','
          << row.counts.tp << ',' << row.counts.fp << ',' << row.counts.fn
          << ',' << fixed(row.f1) << '\n';
    }
    out << "mean: " << fixed(c.mean) << '\n';
    out << "std: " << fixed(c.stddev) << '\n';

    // Method-vs-cardinality table: one column per k, then Avg and Std.
    out << "\n[cardinality_table]\n";
    out << "| method |";
    for (const auto& row : c.rows) out << " k=" << row.cardinality << " |";
    out << " Avg | Std |\n";
    out << "| # groups |";
    for (const auto& row : c.rows) out << ' ' << row.counts.tp + row.counts.fn << " |";
    out << " -- | -- |\n";
    out << "| " << label << " |";
    char buf[16];
    for (const auto& row : c.rows) {
      std::snprintf(buf, sizeof buf, "%.2f", row.f1);
      out << ' ' << buf << " |";
    }
    std::snprintf(buf, sizeof buf, "%.2f", c.mean);
    out << ' ' << buf << " |";
    std::snprintf(buf, sizeof buf, "%.2f", c.stddev);
    out << ' ' << buf << " |\n";
  }
}

}  // namespace gcff
