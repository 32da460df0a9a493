#pragma once

// Frame and group files, evaluation reports.
//
// Frame file: delimiter-separated text (comma or tab), header row naming the
// columns frame_id, person_id, x, y, theta (radians, CCW from +x), one row per
// person. Group file: header row "frame_id,members", one row per group with
// members joined by ';'. A row with no members declares a frame that has no
// groups, so that frames without groups survive a round trip.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcff/metrics.hpp"
#include "gcff/scene.hpp"

namespace gcff {

// Groups of one frame, in file order of first appearance.
using FrameGroups = std::pair<std::string, GroupSet>;

std::vector<Scene> read_frames(std::istream& in);
std::vector<FrameGroups> read_groups(std::istream& in);

// Canonical output: comma-separated, shortest round-trip number formatting.
void write_frames(std::ostream& out, const std::vector<Scene>& scenes);
void write_groups(std::ostream& out, const std::vector<FrameGroups>& groups);

// Attaches ground truth to scenes. Every scene gets a (possibly empty) group
// set. Throws InvalidInput on groups for unknown frames or members that are
// not in their frame.
std::vector<Scene> attach_groups(std::vector<Scene> scenes,
                                 const std::vector<FrameGroups>& groups);

// Path wrappers. Throw std::runtime_error when a file cannot be opened.
std::vector<Scene> parse_frames(
    const std::filesystem::path& frames,
    const std::optional<std::filesystem::path>& groups = std::nullopt);
std::vector<FrameGroups> parse_groups(const std::filesystem::path& path);
void save_frames(const std::filesystem::path& path,
                 const std::vector<Scene>& scenes);
void save_groups(const std::filesystem::path& path,
                 const std::vector<FrameGroups>& groups);

// Shortest decimal that parses back to the same double.
std::string format_number(double v);

// Structured text report; `label` names the detector in the cardinality row.
void write_report(std::ostream& out, const EvalReport& report,
                  const std::string& label);

}  // namespace gcff
