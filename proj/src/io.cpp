#include "leray/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "leray/oracle.hpp"

namespace leray::io {

namespace {

std::string pq_key(int p, int q) {
    return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

Json barcode_json(const Barcode& bars, int filtration_length, bool paper_convention) {
    Json out = Json::array();
    for (const Interval& bar : bars) {
        Json pair = Json::array();
        if (paper_convention && bar.birth == 0)
            pair.push_back("-inf");  // K_i = K for i <= 0
        else
            pair.push_back(bar.birth);
        if (paper_convention && bar.death == filtration_length + 1)
            pair.push_back("inf");
        else
            pair.push_back(bar.death);
        out.push_back(std::move(pair));
    }
    return out;
}

std::vector<std::pair<std::vector<int>, int>> complex_section(const Json& doc,
                                                              bool ascending_convention) {
    if (!doc.contains("complex") || !doc["complex"].is_array())
        throw ParseError("instance needs a \"complex\" array");
    std::vector<std::pair<std::vector<int>, int>> pairs;
    for (const Json& entry : doc["complex"]) {
        if (!entry.is_object() || !entry.contains("vertices") || !entry.contains("level"))
            throw ParseError("complex entries need \"vertices\" and \"level\"");
        pairs.push_back({entry["vertices"].get<std::vector<int>>(), entry["level"].get<int>()});
    }
    if (ascending_convention) {
        // birth indices to removal levels by index reversal
        int max_birth = 0;
        for (const auto& [verts, birth] : pairs) {
            if (birth < 0) throw ParseError("ascending convention needs births >= 0");
            max_birth = std::max(max_birth, birth);
        }
        for (auto& [verts, birth] : pairs) birth = max_birth - birth + 1;
    }
    return pairs;
}

SimplicialMap map_section(const Json& doc, const SimplicialComplex& x) {
    if (!doc.contains("map")) return SimplicialMap::identity(x);
    std::map<int, int> vm;
    for (const Json& pair : doc["map"]) {
        if (!pair.is_array() || pair.size() != 2) throw ParseError("map entries are [x, y] pairs");
        vm[pair[0].get<int>()] = pair[1].get<int>();
    }
    return SimplicialMap(std::move(vm));
}

std::map<int, std::set<Simplex>> cover_section(const Json& doc) {
    if (!doc.contains("cover") || !doc["cover"].is_array())
        throw ParseError("instance needs a \"cover\" array");
    std::map<int, std::set<Simplex>> pieces;
    for (const Json& entry : doc["cover"]) {
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("simplices"))
            throw ParseError("cover entries need \"id\" and \"simplices\"");
        int id = entry["id"].get<int>();
        if (pieces.count(id)) throw ParseError("duplicate cover id " + std::to_string(id));
        std::set<Simplex> simplices;
        for (const Json& verts : entry["simplices"])
            simplices.insert(Simplex(verts.get<std::vector<int>>()));
        pieces.emplace(id, std::move(simplices));
    }
    return pieces;
}

std::uint32_t field_of(const Json& doc, std::uint32_t field_override) {
    std::uint32_t field = 2;
    if (doc.contains("field")) field = doc["field"].get<std::uint32_t>();
    if (field_override != 0) field = field_override;
    if (!is_prime(field))
        throw ParseError("field " + std::to_string(field) + " is not prime");
    return field;
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

SimplicialComplex build_target(const Json& doc, const FilteredComplex& k, const SimplicialMap& f,
                               const std::map<int, std::set<Simplex>>& cover_simplices) {
    if (doc.contains("target")) {
        std::vector<Simplex> gens;
        for (const Json& verts : doc["target"]) gens.push_back(Simplex(verts.get<std::vector<int>>()));
        return SimplicialComplex::closure_of(gens);
    }
    // inferred target: images of the domain plus everything the cover names
    std::vector<Simplex> gens;
    for (const Simplex& s : k.full_complex().simplices()) gens.push_back(f.image(s));
    for (const auto& [id, simplices] : cover_simplices)
        for (const Simplex& s : simplices) gens.push_back(s);
    return SimplicialComplex::closure_of(gens);
}

Instance assemble(const Json& doc, std::uint32_t field_override,
                  std::vector<BuildWarning>* warnings) {
    if (!doc.is_object()) throw ParseError("instance must be a JSON object");
    std::uint32_t field = field_of(doc, field_override);
    bool ascending = false;
    if (doc.contains("convention")) {
        std::string c = doc["convention"].get<std::string>();
        if (c == "ascending") ascending = true;
        else if (c != "descending") throw ParseError("unknown convention \"" + c + "\"");
    }
    FilteredComplex k = build_complex(complex_section(doc, ascending), warnings);
    SimplicialMap f = map_section(doc, k.full_complex());
    auto cover_simplices = cover_section(doc);
    SimplicialComplex y = build_target(doc, k, f, cover_simplices);
    std::map<int, SimplicialComplex> pieces;
    for (const auto& [id, simplices] : cover_simplices)
        pieces.emplace(id, SimplicialComplex(simplices));  // NotSubcomplex when not closed
    CoverSystem cover(k.full_complex(), std::move(y), std::move(f), std::move(pieces));
    check_cover(cover);
    return Instance{std::move(k), std::move(cover), field};
}

}  // namespace

Instance parse_instance(const std::string& text, std::uint32_t field_override) {
    return assemble(parse_json(text), field_override, nullptr);
}

Instance load_instance(const std::string& path, std::uint32_t field_override) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), field_override);
}

std::string serialize_instance(const Instance& inst) {
    // one record per line, so fixtures stay hand-editable and diffable
    std::ostringstream out;
    out << "{\n";
    out << " \"field\": " << inst.field << ",\n";
    out << " \"complex\": [";
    bool first = true;
    for (const auto& [s, lvl] : inst.complex.levels()) {
        Json entry;
        entry["vertices"] = s.vertices;
        entry["level"] = lvl;
        out << (first ? "\n  " : ",\n  ") << entry.dump();
        first = false;
    }
    out << "\n ],\n";
    Json map_entries = Json::array();
    for (const auto& [x, y] : inst.cover.map().vertex_map())
        map_entries.push_back(Json::array({x, y}));
    out << " \"map\": " << map_entries.dump() << ",\n";
    Json target = Json::array();
    for (const Simplex& s : inst.cover.target().simplices()) target.push_back(s.vertices);
    out << " \"target\": " << target.dump() << ",\n";
    out << " \"cover\": [";
    first = true;
    for (int id : inst.cover.ids()) {
        Json entry;
        entry["id"] = id;
        entry["simplices"] = Json::array();
        for (const Simplex& s : inst.cover.piece(id).simplices())
            entry["simplices"].push_back(s.vertices);
        out << (first ? "\n  " : ",\n  ") << entry.dump();
        first = false;
    }
    out << "\n ]\n}\n";
    return out.str();
}

std::vector<Diagnostic> check_instance(const std::string& text, std::uint32_t field_override) {
    std::vector<Diagnostic> out;
    Json doc;
    try {
        doc = parse_json(text);
        if (!doc.is_object()) throw ParseError("instance must be a JSON object");
        field_of(doc, field_override);
    } catch (const Error& e) {
        out.push_back({"parse", e.what(), true});
        return out;
    }

    FilteredComplex k;
    try {
        bool ascending = false;
        if (doc.contains("convention")) {
            std::string c = doc["convention"].get<std::string>();
            if (c == "ascending") ascending = true;
            else if (c != "descending") throw ParseError("unknown convention \"" + c + "\"");
        }
        std::vector<BuildWarning> warnings;
        k = build_complex(complex_section(doc, ascending), &warnings);
        for (const BuildWarning& w : warnings)
            out.push_back({"missing-face", "face " + w.face.str() + " is not listed (would be inserted at level " +
                                               std::to_string(w.level) + ")",
                           true});
    } catch (const Error& e) {
        out.push_back({"complex", e.what(), true});
        return out;
    }

    std::map<int, std::set<Simplex>> cover_simplices;
    try {
        cover_simplices = cover_section(doc);
    } catch (const Error& e) {
        out.push_back({"cover", e.what(), true});
        return out;
    }

    SimplicialMap f = SimplicialMap::identity(k.full_complex());
    try {
        f = map_section(doc, k.full_complex());
    } catch (const Error& e) {
        out.push_back({"map", e.what(), true});
        return out;
    }

    SimplicialComplex y;
    try {
        y = build_target(doc, k, f, cover_simplices);
    } catch (const Error& e) {
        out.push_back({"target", e.what(), true});
        return out;
    }

    // itemized map check
    for (const Simplex& s : k.full_complex().simplices()) {
        try {
            if (!y.contains(f.image(s)))
                out.push_back({"not-simplicial",
                               "image " + f.image(s).str() + " of " + s.str() +
                                   " is not a simplex of the target",
                               true});
        } catch (const Error& e) {
            out.push_back({"map", e.what(), true});
            return out;
        }
    }

    // itemized cover checks: closure of each piece, then covering
    std::map<int, SimplicialComplex> pieces;
    for (const auto& [id, simplices] : cover_simplices) {
        try {
            SimplicialComplex piece(simplices);
            for (const Simplex& s : piece.simplices())
                if (!y.contains(s))
                    out.push_back({"cover", "piece " + std::to_string(id) + " contains " + s.str() +
                                                ", not a simplex of the target",
                                   true});
            pieces.emplace(id, std::move(piece));
        } catch (const Error& e) {
            out.push_back({"not-subcomplex", "piece " + std::to_string(id) + ": " + e.what(), true});
        }
    }
    if (std::none_of(out.begin(), out.end(), [](const Diagnostic& d) { return d.fatal; })) {
        try {
            CoverSystem cover(k.full_complex(), y, f, pieces);
            check_cover(cover);
        } catch (const NotCovering& e) {
            for (const Simplex& s : e.uncovered)
                out.push_back({"not-covering", "simplex " + s.str() + " lies in no pulled-back piece",
                               true});
        } catch (const Error& e) {
            out.push_back({"cover", e.what(), true});
        }
    }
    return out;
}

Json pages_report(const Instance& inst, int slice_index, int r) {
    int i = std::clamp(slice_index, 0, inst.complex.length());  // K_i = K_0 below, empty above
    int page_r = std::max(r, 0);
    DoubleComplexSlice slice = DoubleComplexSlice::build(inst.complex, inst.cover, i, inst.field);
    TotalComplex tot = TotalComplex::build(slice);
    Page pg = page(tot, page_r);
    Json out;
    out["i"] = i;
    out["r"] = page_r;
    out["dims"] = Json::object();
    for (const auto& [pq, dim] : pg.dims()) out["dims"][pq_key(pq.first, pq.second)] = dim;
    out["d_ranks"] = Json::object();
    for (int p = 0; p <= pg.max_p(); ++p)
        for (int q = 0; q <= pg.max_q(); ++q)
            if (pg.has_differential(p, q)) {
                int rk = rank(pg.differential(p, q));
                if (rk > 0) out["d_ranks"][pq_key(p, q)] = rk;
            }
    return out;
}

Json barcode_report(const Instance& inst, int degree, bool paper_convention) {
    int n = std::max(degree, 0);
    SpectralStack stack = SpectralStack::build(inst.complex, inst.cover, inst.field);
    PhCompareReport cmp = ph_compare(stack, inst.complex);
    Json out;
    out["degree"] = n;
    if (n < static_cast<int>(cmp.degrees.size())) {
        const DegreeComparison& row = cmp.degrees[n];
        out["oracle"] = barcode_json(row.oracle_barcode, inst.complex.length(), paper_convention);
        out["spectral"] = barcode_json(row.spectral_barcode, inst.complex.length(), paper_convention);
        out["agree"] = row.barcodes_agree;
    } else {
        out["oracle"] = Json::array();
        out["spectral"] = Json::array();
        out["agree"] = true;
    }
    return out;
}

Json compare_report(const Instance& inst) {
    const FilteredComplex& k = inst.complex;
    SpectralStack stack = SpectralStack::build(k, inst.cover, inst.field);

    bool mv_ok = true, e2_ok = true, eta_squares_ok = true, eta_defined_ok = true;
    Json slices = Json::array();
    bool convergence_ok = true;
    for (int i = 0; i <= stack.length(); ++i) {
        SimplicialComplex k_i = k.slice(i);
        Json row;
        row["i"] = i;
        Json h_dims = Json::array();
        int n_top = std::max(stack.top_degree(), 0);
        for (int n = 0; n <= n_top; ++n) h_dims.push_back(cohomology_dim(k_i, n, inst.field));
        row["cohomology"] = h_dims;
        for (int n = 0; n <= n_top; ++n) {
            int direct = cohomology_dim(k_i, n, inst.field);
            if (total_cohomology_dim(stack.total(i), n) != direct) mv_ok = false;
        }
        try {
            e2_as_cech(stack.slice(i), stack.total(i));
        } catch (const MismatchError&) {
            e2_ok = false;
        }
        Json e2 = Json::object();
        for (const auto& [pq, dim] : stack.page_at(i, std::min(2, stack.r_infinity())).dims())
            e2[pq_key(pq.first, pq.second)] = dim;
        row["e2"] = e2;
        Json einf = Json::object();
        for (const auto& [pq, dim] : stack.page_at(i, stack.r_infinity()).dims())
            einf[pq_key(pq.first, pq.second)] = dim;
        row["e_infinity"] = einf;
        row["r_stable"] = stack.r_stable(i);
        Json conv = Json::array();
        for (const ConvergenceRow& c : convergence_check(stack.page_at(i, stack.r_infinity()), k_i)) {
            Json cr;
            cr["n"] = c.n;
            cr["e_inf"] = c.einf_total;
            cr["direct"] = c.direct_dim;
            cr["equal"] = c.equal;
            if (!c.equal) convergence_ok = false;
            conv.push_back(std::move(cr));
        }
        row["convergence"] = conv;
        slices.push_back(std::move(row));
    }
    for (int i = 0; i < stack.length(); ++i) {
        if (!eta_commutes(stack.slice(i), stack.slice(i + 1))) eta_squares_ok = false;
        try {
            for (int r = 1; r <= stack.r_infinity(); ++r) stack.eta_at(i, r);
        } catch (const NotWellDefined&) {
            eta_defined_ok = false;
        }
    }

    PhCompareReport cmp = ph_compare(stack, k);
    Json degrees = Json::array();
    for (const DegreeComparison& deg : cmp.degrees) {
        Json row;
        row["n"] = deg.degree;
        row["tower_dims"] = deg.tower_dims;
        row["e_inf_dims"] = deg.einf_dims;
        row["dims_equal"] = deg.dims_equal;
        row["oracle_barcode"] = barcode_json(deg.oracle_barcode, k.length(), false);
        row["spectral_barcode"] = barcode_json(deg.spectral_barcode, k.length(), false);
        row["barcodes_agree"] = deg.barcodes_agree;
        Json modules = Json::array();
        for (int p = 0; p <= stack.max_p(); ++p) {
            int q = deg.degree - p;
            if (q < 0 || q > stack.max_q()) continue;
            PersistenceModule pm = persistent_page_module(stack, stack.r_infinity(), p, q);
            bool nonzero = std::any_of(pm.dims.begin(), pm.dims.end(), [](int d) { return d > 0; });
            if (!nonzero) continue;
            Json entry;
            entry["p"] = p;
            entry["q"] = q;
            entry["dims"] = pm.dims;
            entry["barcode"] = barcode_json(interval_decomposition(pm), k.length(), false);
            modules.push_back(std::move(entry));
        }
        row["page_modules"] = modules;
        degrees.push_back(std::move(row));
    }

    Json out;
    out["schema_version"] = 1;
    out["field"] = inst.field;
    out["filtration_length"] = k.length();
    out["cover_pieces"] = inst.cover.ids().size();
    out["r_infinity"] = stack.r_infinity();
    out["slices"] = slices;
    Json checks;
    checks["generalized_mayer_vietoris"] = mv_ok;
    checks["spectral_convergence"] = convergence_ok;
    checks["e2_two_path"] = e2_ok;
    checks["eta_commuting_squares"] = eta_squares_ok;
    checks["eta_well_defined"] = eta_defined_ok;
    checks["dimension_convergence"] = cmp.all_dims_equal;
    out["checks"] = checks;
    out["degrees"] = degrees;
    out["barcodes_agree"] = cmp.all_barcodes_agree;
    out["all_ok"] = mv_ok && convergence_ok && e2_ok && eta_squares_ok && eta_defined_ok &&
                    cmp.all_dims_equal;
    return out;
}

bool report_ok(const Json& report) { return report.value("all_ok", false); }

std::string barcode_svg(const Barcode& oracle, const Barcode& spectral, int filtration_length,
                        int degree) {
    const int margin = 40, bar_h = 12, gap = 8, axis_h = 30, label_w = 70;
    int n = std::max(filtration_length, 1);
    const int unit = 60;
    int width = label_w + margin + (n + 1) * unit + margin;
    std::size_t rows = oracle.size() + spectral.size();
    int height = axis_h + static_cast<int>(rows) * (bar_h + gap) + 3 * margin;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    svg << "  <text x=\"" << margin << "\" y=\"20\" font-family=\"monospace\" font-size=\"14\">"
        << "degree " << degree << " barcode</text>\n";
    auto x_of = [&](int idx) { return label_w + margin + idx * unit; };
    int axis_y = height - axis_h;
    svg << "  <line x1=\"" << x_of(0) << "\" y1=\"" << axis_y << "\" x2=\""
        << x_of(filtration_length + 1) << "\" y2=\"" << axis_y
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= filtration_length + 1; ++i) {
        svg << "  <line x1=\"" << x_of(i) << "\" y1=\"" << axis_y << "\" x2=\"" << x_of(i)
            << "\" y2=\"" << axis_y + 5 << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg << "  <text x=\"" << x_of(i) - 4 << "\" y=\"" << axis_y + 20
            << "\" font-family=\"monospace\" font-size=\"11\">" << i << "</text>\n";
    }
    int y = margin + 20;
    auto draw = [&](const Barcode& bars, const char* label, const char* color) {
        svg << "  <text x=\"" << margin << "\" y=\"" << y + bar_h - 2
            << "\" font-family=\"monospace\" font-size=\"11\">" << label << "</text>\n";
        if (bars.empty()) y += bar_h + gap;
        for (const Interval& bar : bars) {
            svg << "  <rect x=\"" << x_of(bar.birth) << "\" y=\"" << y << "\" width=\""
                << (bar.death - bar.birth) * unit << "\" height=\"" << bar_h << "\" fill=\"" << color
                << "\"/>\n";
            y += bar_h + gap;
        }
    };
    draw(oracle, "oracle", "#4878a8");
    draw(spectral, "spectral", "#a84848");
    svg << "</svg>\n";
    return svg.str();
}

Instance band_cover_instance(int vertices, int bands, bool path_shape, std::uint32_t field) {
    if (vertices < 1) throw ParseError("band cover needs at least one vertex");
    if (bands < 1 || bands > vertices) throw ParseError("band count must lie in [1, vertices]");
    std::vector<std::pair<std::vector<int>, int>> pairs;
    for (int v = 0; v < vertices; ++v) pairs.push_back({{v}, 1});
    int edge_count = path_shape ? vertices - 1 : (vertices >= 3 ? vertices : vertices - 1);
    for (int e = 0; e < edge_count; ++e) {
        int a = e, b = (e + 1) % vertices;
        if (a != b) pairs.push_back({{std::min(a, b), std::max(a, b)}, 1});
    }
    FilteredComplex k = build_complex(pairs);
    SimplicialComplex x = k.full_complex();
    SimplicialMap f = SimplicialMap::identity(x);

    std::map<int, SimplicialComplex> pieces;
    std::vector<int> starts;
    for (int j = 0; j < bands; ++j)
        starts.push_back(static_cast<int>(static_cast<long long>(j) * vertices / bands));
    for (int j = 0; j < bands; ++j) {
        int from = starts[j];
        int to = path_shape ? (j + 1 == bands ? vertices - 1 : starts[j + 1])
                            : starts[(j + 1) % bands];
        std::vector<Simplex> gens;
        gens.push_back(Simplex{from});
        int v = from;
        for (int steps = 0; steps < vertices; ++steps) {
            int next = (v + 1) % vertices;
            if (next == v) break;                // single-vertex target
            if (path_shape && next == 0) break;  // a path has no wrap edge
            Simplex edge{std::min(v, next), std::max(v, next)};
            if (x.contains(edge)) gens.push_back(edge);
            gens.push_back(Simplex{next});
            v = next;
            if (bands == 1 && !path_shape) {
                if (v == from) break;  // one band walks the whole cycle
            } else if (v == to) {
                break;
            }
        }
        pieces.emplace(j, SimplicialComplex::closure_of(gens));
    }
    CoverSystem cover(x, x, std::move(f), std::move(pieces));
    check_cover(cover);
    return Instance{std::move(k), std::move(cover), field};
}

}  // namespace leray::io
