#pragma once

#include <string>
#include <vector>

#include "chordal/critical.hpp"
#include "chordal/loop.hpp"
#include "chordal/persistence.hpp"
#include "chordal/volume.hpp"

namespace chordal::io {

/// Raised on unreadable, unwritable or malformed files.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CSV: one point per row, d comma-separated columns. JSON: an object with
/// a "points" array of coordinate arrays. Cyclic order is row order.
std::vector<Vec> read_points_csv(const std::string& path);
std::vector<Vec> read_points_json(const std::string& path);
/// format: "csv", "json" or "auto" (by extension, default csv).
std::vector<Vec> read_points(const std::string& path, const std::string& format);

/// All numbers in emitted JSON carry 17 significant digits so doubles
/// round-trip exactly; infinite deaths serialize as the string "inf".
std::string format_double(double x);

std::string diagram_to_json(const PersistenceDiagram& diag,
                            const std::vector<DiagramPoint>* zero_pairs = nullptr);
PersistenceDiagram diagram_from_json_text(const std::string& text);

std::string report_to_json(const NondegeneracyReport& rep);
std::string chords_to_json(const std::vector<CriticalChord>& chords,
                           const AgreementReport* agreement = nullptr);
std::string stability_reports_to_json(const std::vector<StabilityReport>& reps);

/// Plain-text export of a filtered complex, one simplex per line:
/// `dim v0 v1 ... F`, in filtration order.
void write_filtered_complex_text(const FilteredComplex& fc,
                                 const std::string& path);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace chordal::io
