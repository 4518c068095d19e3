#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "leray/persistence.hpp"

namespace leray::io {

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

using Json = nlohmann::ordered_json;

// A complete problem instance: filtered complex, simplicial map, cover.
struct Instance {
    FilteredComplex complex;
    CoverSystem cover;
    std::uint32_t field = 2;
};

// Parses the JSON instance format.  Sections: "complex" (vertices + level),
// "map" (vertex pairs, identity when absent), "cover" (pieces of the target),
// optional "target" (simplices of Y; inferred from images and cover pieces
// when absent), optional "field" (prime, default 2) and optional
// "convention" ("descending" is native; "ascending" converts by index
// reversal).  field_override, when nonzero, wins over the file.
Instance parse_instance(const std::string& text, std::uint32_t field_override = 0);
Instance load_instance(const std::string& path, std::uint32_t field_override = 0);
std::string serialize_instance(const Instance& inst);

struct Diagnostic {
    std::string kind;
    std::string detail;
    bool fatal;
};

// Staged validation collecting everything wrong with an instance file; used
// by the check subcommand.  Auto-insertable missing faces are reported as
// fatal here: a checked file must be explicit.
std::vector<Diagnostic> check_instance(const std::string& text, std::uint32_t field_override = 0);

// {"i":..,"r":..,"dims":{"(p,q)":dim},"d_ranks":{"(p,q)":rank}}
Json pages_report(const Instance& inst, int slice_index, int r);

// {"degree":n,"oracle":[[b,d]..],"spectral":[[b,d]..],"agree":bool}
Json barcode_report(const Instance& inst, int degree, bool paper_convention = false);

// Full comparison report: per-slice page dims and convergence, the
// theorem-level checks, per-degree barcodes.  Deterministic bytes for a given
// instance; contains no timing.
Json compare_report(const Instance& inst);

// Exit-code rule for the compare subcommand: every dimension-level check.
bool report_ok(const Json& report);

// Static SVG: one horizontal bar per interval, index axis 0..N, the two
// barcode families stacked and labelled.
std::string barcode_svg(const Barcode& oracle, const Barcode& spectral, int filtration_length,
                        int degree);

// Cycle- or path-shaped instance with an interval band cover (overlap 1),
// identity map, all levels 1.
Instance band_cover_instance(int vertices, int bands, bool path_shape = false,
                             std::uint32_t field = 2);

}  // namespace leray::io
