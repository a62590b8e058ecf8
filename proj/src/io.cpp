#include "tilescott/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tilescott {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int parse_int(const std::string& tok, int line) {
    try {
        size_t pos;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (...) {
        throw ParseError(line, "expected an integer, got '" + tok + "'");
    }
}

// ---------------------------------------------------------------- tilings --

// dart token: <edge><+|-> where edge is b<k> (boundary) or an interior id
Dart parse_tiling_dart(const std::string& tok, int n, int interior_count, int line) {
    if (tok.size() < 2) throw ParseError(line, "bad dart token '" + tok + "'");
    char dir = tok.back();
    if (dir != '+' && dir != '-') throw ParseError(line, "dart token must end in + or -");
    std::string ref = tok.substr(0, tok.size() - 1);
    EdgeId e;
    if (ref[0] == 'b') {
        int k = parse_int(ref.substr(1), line);
        if (k < 1 || k > n) throw ParseError(line, "boundary edge out of range");
        e = k - 1;
    } else {
        int k = parse_int(ref, line);
        if (k < 1 || k > interior_count) throw ParseError(line, "unknown interior edge " + ref);
        e = n + k - 1;
    }
    return edge_dart(e, dir == '+');
}

std::string tiling_dart_token(const BicoloredTiling& t, Dart d) {
    EdgeId e = dart_edge(d);
    std::string ref = e < t.n ? "b" + std::to_string(e + 1) : std::to_string(e - t.n + 1);
    return ref + (dart_is_forward(d) ? "+" : "-");
}

BicoloredTiling parse_tiling(const std::vector<std::pair<int, std::string>>& lines, size_t i) {
    TilingSpec spec;
    bool have_n = false;
    std::vector<std::pair<int, std::vector<std::string>>> rot_lines, color_lines, embed_lines;

    for (; i < lines.size(); ++i) {
        int ln = lines[i].first;
        auto toks = split_ws(lines[i].second);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "n") {
            if (toks.size() != 2) throw ParseError(ln, "usage: n <count>");
            spec.n = parse_int(toks[1], ln);
            if (spec.n < 1) throw ParseError(ln, "n must be positive");
            have_n = true;
        } else if (kw == "iv") {
            if (!have_n) throw ParseError(ln, "iv before n");
            if (toks.size() != 2) throw ParseError(ln, "usage: iv <count>");
            spec.internal_vertices = parse_int(toks[1], ln);
        } else if (kw == "e") {
            if (!have_n) throw ParseError(ln, "e before n");
            if (toks.size() != 4) throw ParseError(ln, "usage: e <id> <u> <v>");
            int id = parse_int(toks[1], ln);
            if (id != static_cast<int>(spec.interior_edges.size()) + 1)
                throw ParseError(ln, "interior edge ids must be 1,2,... in order");
            auto vtx = [&](const std::string& tok) {
                int v = parse_int(tok, ln);
                if (v < 1 || v > spec.n + spec.internal_vertices)
                    throw ParseError(ln, "vertex out of range: " + tok);
                return v - 1;
            };
            spec.interior_edges.push_back({vtx(toks[2]), vtx(toks[3])});
        } else if (kw == "rot") {
            rot_lines.push_back({ln, toks});
        } else if (kw == "color") {
            color_lines.push_back({ln, toks});
        } else if (kw == "embed") {
            embed_lines.push_back({ln, toks});
        } else {
            throw ParseError(ln, "unknown directive '" + kw + "'");
        }
    }
    if (!have_n) throw ParseError(0, "missing n line");

    int M = static_cast<int>(spec.interior_edges.size());
    spec.interior_rotations.resize(spec.n + spec.internal_vertices);
    for (auto& [ln, toks] : rot_lines) {
        if (toks.size() < 3 || toks[2] != ":") throw ParseError(ln, "usage: rot <vertex> : <darts>");
        int v = parse_int(toks[1], ln) - 1;
        if (v < 0 || v >= spec.n + spec.internal_vertices)
            throw ParseError(ln, "vertex out of range");
        for (size_t k = 3; k < toks.size(); ++k)
            spec.interior_rotations[v].push_back(parse_tiling_dart(toks[k], spec.n, M, ln));
    }
    for (auto& [ln, toks] : color_lines) {
        if (toks.size() != 4 || toks[2] != ":")
            throw ParseError(ln, "usage: color <white|black> : <dart>");
        TileColor c;
        if (toks[1] == "white")
            c = TileColor::White;
        else if (toks[1] == "black")
            c = TileColor::Black;
        else
            throw ParseError(ln, "color must be white or black");
        spec.color_hints.push_back({parse_tiling_dart(toks[3], spec.n, M, ln), c});
    }
    for (auto& [ln, toks] : embed_lines) {
        if (toks.size() != 4 || toks[2] != ":")
            throw ParseError(ln, "usage: embed <component> : <dart>");
        int idx = parse_int(toks[1], ln);
        if (idx != static_cast<int>(spec.embeddings.size()) + 1)
            throw ParseError(ln, "embed lines must name components 1,2,... in order");
        spec.embeddings.push_back(parse_tiling_dart(toks[3], spec.n, M, ln));
    }

    BicoloredTiling t;
    try {
        t = build_tiling(spec);
    } catch (const MapError& e) {
        throw ParseError(0, e.what());
    }
    ValidationReport rep = validate_tiling(t);
    if (!rep.ok()) throw TilingError("ValidationFailure", rep.to_string());
    return t;
}

// Renumbers internal vertices and interior edges into canonical traversal
// order so serialization is a function of the isomorphism class.
BicoloredTiling canonicalize(const BicoloredTiling& t) {
    std::vector<int> rank;
    canonical_code(t.map, t.anchor(), CodeDecorations{}, &rank);
    const CombMap& m = t.map;
    auto edge_key = [&](EdgeId e) {
        return std::min(rank[edge_dart(e, true)], rank[edge_dart(e, false)]);
    };
    std::vector<EdgeId> interior;
    for (EdgeId e = t.n; e < m.edge_count(); ++e) interior.push_back(e);
    std::sort(interior.begin(), interior.end(),
              [&](EdgeId a, EdgeId b) { return edge_key(a) < edge_key(b); });
    std::vector<VertexId> internals;
    for (VertexId v = t.n; v < m.vertex_count(); ++v) internals.push_back(v);
    auto vertex_key = [&](VertexId v) {
        int best = INT32_MAX;
        for (Dart d : m.rotation(v)) best = std::min(best, rank[d]);
        return best;
    };
    std::sort(internals.begin(), internals.end(),
              [&](VertexId a, VertexId b) { return vertex_key(a) < vertex_key(b); });

    std::vector<EdgeId> edge_map(m.edge_count());
    for (EdgeId e = 0; e < t.n; ++e) edge_map[e] = e;
    for (size_t k = 0; k < interior.size(); ++k) edge_map[interior[k]] = t.n + static_cast<int>(k);
    std::vector<VertexId> vertex_map(m.vertex_count());
    for (VertexId v = 0; v < t.n; ++v) vertex_map[v] = v;
    for (size_t k = 0; k < internals.size(); ++k)
        vertex_map[internals[k]] = t.n + static_cast<int>(k);

    std::vector<std::vector<Dart>> rot(m.vertex_count());
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
        // rotate boundary rotations so the boundary darts come first
        const auto& src = m.rotation(v);
        int start = 0;
        if (v < t.n)
            for (size_t k = 0; k < src.size(); ++k)
                if (src[k] == edge_dart(v, true)) start = static_cast<int>(k);
        for (size_t k = 0; k < src.size(); ++k) {
            Dart d = src[(start + k) % src.size()];
            rot[vertex_map[v]].push_back(edge_dart(edge_map[dart_edge(d)], dart_is_forward(d)));
        }
    }
    BicoloredTiling out;
    out.n = t.n;
    out.map = CombMap::build(m.vertex_count(), m.edge_count(), rot);
    auto new_dart = [&](Dart d) { return edge_dart(edge_map[dart_edge(d)], dart_is_forward(d)); };
    int root = out.map.dart_component(out.anchor());
    out.map.set_outer_face(root, out.map.face_of(out.anchor()));
    for (int c = 0; c < m.component_count(); ++c) {
        if (m.outer_face(c) == kNoFace) continue;
        Dart od = new_dart(m.face_cycle(m.outer_face(c)).front());
        int nc = out.map.dart_component(od);
        if (nc == root) continue;
        out.map.set_outer_face(nc, out.map.face_of(od));
        if (m.host_face(c) != kNoFace)
            out.map.set_host_face(nc,
                                  out.map.face_of(new_dart(m.face_cycle(m.host_face(c)).front())));
    }
    out.face_color.assign(out.map.face_count(), TileColor::Outer);
    for (FaceId f = 0; f < m.face_count(); ++f)
        out.face_color[out.map.face_of(new_dart(m.face_cycle(f).front()))] = t.face_color[f];
    return out;
}

std::string serialize_tiling(const BicoloredTiling& raw) {
    BicoloredTiling t = canonicalize(raw);
    const CombMap& m = t.map;
    std::ostringstream out;
    out << "tilescott v1 tiling\n";
    out << "n " << t.n << "\n";
    if (m.vertex_count() > t.n) out << "iv " << (m.vertex_count() - t.n) << "\n";
    for (EdgeId e = t.n; e < m.edge_count(); ++e)
        out << "e " << (e - t.n + 1) << " " << (m.origin(edge_dart(e, true)) + 1) << " "
            << (m.target(edge_dart(e, true)) + 1) << "\n";
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
        const auto& rot = m.rotation(v);
        std::vector<Dart> interior;
        if (v < t.n) {
            for (size_t k = 2; k < rot.size(); ++k) interior.push_back(rot[k]);
        } else {
            interior.assign(rot.begin(), rot.end());
        }
        if (interior.empty()) continue;
        out << "rot " << (v + 1) << " :";
        for (Dart d : interior) out << " " << tiling_dart_token(t, d);
        out << "\n";
    }
    for (FaceId f = 0; f < m.face_count(); ++f) {
        if (t.face_color[f] != TileColor::Black) continue;
        int c = m.face_component(f);
        if (m.outer_face(c) == f && m.host_face(c) != kNoFace) continue;
        out << "color black : " << tiling_dart_token(t, m.face_cycle(f).front()) << "\n";
    }
    std::vector<std::pair<EdgeId, int>> floats;
    int root = m.dart_component(t.anchor());
    std::vector<EdgeId> first_edge(m.component_count(), -1);
    for (EdgeId e = 0; e < m.edge_count(); ++e) {
        int c = m.dart_component(edge_dart(e, true));
        if (first_edge[c] == -1) first_edge[c] = e;
    }
    for (int c = 0; c < m.component_count(); ++c)
        if (c != root) floats.push_back({first_edge[c], c});
    std::sort(floats.begin(), floats.end());
    int idx = 1;
    for (auto& [fe, c] : floats)
        out << "embed " << idx++ << " : "
            << tiling_dart_token(t, m.face_cycle(m.host_face(c)).front()) << "\n";
    return out.str();
}

// --------------------------------------------------------------- diagrams --

PathDiagram parse_diagram(const std::vector<std::pair<int, std::string>>& lines, size_t i) {
    StrandData sd;
    bool have_n = false;
    std::map<std::string, int> crossing_of;
    std::vector<std::pair<int, std::vector<std::string>>> free_lines;
    std::vector<char> strand_seen;

    auto crossing = [&](const std::string& tok, int ln) {
        auto it = crossing_of.find(tok);
        if (it == crossing_of.end()) throw ParseError(ln, "undeclared crossing '" + tok + "'");
        return it->second;
    };

    for (; i < lines.size(); ++i) {
        int ln = lines[i].first;
        auto toks = split_ws(lines[i].second);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "n") {
            if (toks.size() != 2) throw ParseError(ln, "usage: n <count>");
            sd.n = parse_int(toks[1], ln);
            if (sd.n < 1) throw ParseError(ln, "n must be positive");
            sd.strand_seq.assign(sd.n, {});
            sd.strand_target.assign(sd.n, -1);
            strand_seen.assign(sd.n, 0);
            have_n = true;
        } else if (kw == "cross") {
            if (!have_n) throw ParseError(ln, "cross before n");
            for (size_t k = 1; k < toks.size(); ++k) {
                if (crossing_of.count(toks[k])) throw ParseError(ln, "crossing declared twice");
                crossing_of[toks[k]] = sd.crossing_count++;
            }
            sd.sign.assign(sd.crossing_count, 0);
        } else if (kw == "strand") {
            if (!have_n) throw ParseError(ln, "strand before n");
            if (toks.size() < 4 || toks[2] != "->")
                throw ParseError(ln, "usage: strand <i> -> <j> : <crossings>");
            int src = parse_int(toks[1], ln) - 1;
            int dst = parse_int(toks[3], ln) - 1;
            if (src < 0 || src >= sd.n || dst < 0 || dst >= sd.n)
                throw ParseError(ln, "strand endpoints out of range");
            if (strand_seen[src]) throw ParseError(ln, "strand declared twice");
            strand_seen[src] = 1;
            sd.strand_target[src] = dst;
            if (toks.size() > 4) {
                if (toks[4] != ":") throw ParseError(ln, "expected ':' after the target");
                for (size_t k = 5; k < toks.size(); ++k)
                    sd.strand_seq[src].push_back(crossing(toks[k], ln));
            }
        } else if (kw == "sign") {
            if (toks.size() != 3) throw ParseError(ln, "usage: sign <crossing> <+|->");
            int c = crossing(toks[1], ln);
            if (toks[2] == "+")
                sd.sign[c] = 1;
            else if (toks[2] == "-")
                sd.sign[c] = -1;
            else
                throw ParseError(ln, "sign must be + or -");
        } else if (kw == "cycle") {
            if (toks.size() < 4 || toks[2] != ":")
                throw ParseError(ln, "usage: cycle <cw|ccw> : <crossings>");
            if (toks[1] != "cw" && toks[1] != "ccw")
                throw ParseError(ln, "cycle orientation must be cw or ccw");
            std::vector<int> seq;
            for (size_t k = 3; k < toks.size(); ++k) seq.push_back(crossing(toks[k], ln));
            sd.cycle_seq.push_back(std::move(seq));
        } else if (kw == "freecycle") {
            free_lines.push_back({ln, toks});
        } else {
            throw ParseError(ln, "unknown directive '" + kw + "'");
        }
    }
    if (!have_n) throw ParseError(0, "missing n line");
    for (int v = 0; v < sd.n; ++v)
        if (!strand_seen[v]) throw ParseError(0, "missing strand " + std::to_string(v + 1));
    for (int c = 0; c < sd.crossing_count; ++c)
        if (sd.sign[c] == 0) throw ParseError(0, "missing sign for crossing " + std::to_string(c + 1));

    for (auto& [ln, toks] : free_lines) {
        if (toks.size() != 4 || toks[2] != ":")
            throw ParseError(ln, "usage: freecycle <cw|ccw> : <host>");
        StrandData::FreeCycleRef ref;
        if (toks[1] == "cw")
            ref.clockwise = true;
        else if (toks[1] == "ccw")
            ref.clockwise = false;
        else
            throw ParseError(ln, "orientation must be cw or ccw");
        const std::string& h = toks[3];
        if (h[0] == '@') {
            ref.host_free = parse_int(h.substr(1), ln) - 1;
            if (ref.host_free < 0 || ref.host_free >= static_cast<int>(sd.free_cycles.size()))
                throw ParseError(ln, "freecycle host must name an earlier freecycle");
        } else if (h[0] == 'b') {
            ref.path = -1;
            ref.seg = parse_int(h.substr(1), ln) - 1;
            if (ref.seg < 0 || ref.seg >= sd.n) throw ParseError(ln, "boundary arc out of range");
        } else if (h[0] == 's' || h[0] == 'y') {
            char side = h.back();
            if (side != '+' && side != '-') throw ParseError(ln, "host must end in + or -");
            std::string body = h.substr(1, h.size() - 2);
            auto dot = body.find('.');
            if (dot == std::string::npos)
                throw ParseError(ln, "host must be s<i>.<seg> or y<j>.<seg>");
            int p = parse_int(body.substr(0, dot), ln) - 1;
            ref.seg = parse_int(body.substr(dot + 1), ln);
            ref.path = h[0] == 's' ? p : sd.n + p;
            ref.left = side == '+';
        } else {
            throw ParseError(ln, "bad host reference '" + h + "'");
        }
        sd.free_cycles.push_back(ref);
    }

    PathDiagram d = build_diagram(std::move(sd));
    ValidationReport rep = validate_diagram(d);
    if (!rep.ok()) throw DiagramError("ValidationFailure", rep.to_string());
    return d;
}

std::string serialize_diagram(const PathDiagram& d) {
    // canonical crossing numbering: first occurrence along strands then cycles
    std::vector<int> remap(d.data.crossing_count, -1);
    int next = 0;
    auto touch = [&](int c) {
        if (remap[c] == -1) remap[c] = next++;
    };
    for (int i = 0; i < d.n; ++i)
        for (int c : d.data.strand_seq[i]) touch(c);
    std::vector<std::vector<int>> cycles = d.data.cycle_seq;
    std::vector<std::pair<int, size_t>> cycle_order;
    for (size_t j = 0; j < cycles.size(); ++j) {
        for (int c : cycles[j]) touch(c);
        int best = 0;
        for (size_t k = 1; k < cycles[j].size(); ++k)
            if (remap[cycles[j][k]] < remap[cycles[j][best]]) best = static_cast<int>(k);
        std::rotate(cycles[j].begin(), cycles[j].begin() + best, cycles[j].end());
        cycle_order.push_back({remap[cycles[j][0]], j});
    }
    std::sort(cycle_order.begin(), cycle_order.end());

    std::ostringstream out;
    out << "tilescott v1 diagram\n";
    out << "n " << d.n << "\n";
    if (d.data.crossing_count > 0) {
        out << "cross";
        for (int c = 0; c < d.data.crossing_count; ++c) out << " " << (c + 1);
        out << "\n";
    }
    for (int i = 0; i < d.n; ++i) {
        out << "strand " << (i + 1) << " -> " << (d.data.strand_target[i] + 1);
        if (!d.data.strand_seq[i].empty()) {
            out << " :";
            for (int c : d.data.strand_seq[i]) out << " " << (remap[c] + 1);
        }
        out << "\n";
    }
    for (auto& [key, j] : cycle_order) {
        out << "cycle " << (path_clockwise(d, d.n + static_cast<int>(j)) ? "cw" : "ccw") << " :";
        for (int c : cycles[j]) out << " " << (remap[c] + 1);
        out << "\n";
    }
    std::vector<int> sign_of(d.data.crossing_count, 0);
    for (int c = 0; c < d.data.crossing_count; ++c)
        if (remap[c] != -1) sign_of[remap[c]] = d.data.sign[c];
    for (int c = 0; c < d.data.crossing_count; ++c)
        out << "sign " << (c + 1) << " " << (sign_of[c] > 0 ? "+" : "-") << "\n";

    for (size_t k = 0; k < d.free_cycles.size(); ++k) {
        const auto& fc = d.free_cycles[k];
        out << "freecycle " << (fc.clockwise ? "cw" : "ccw") << " : ";
        if (fc.host_free >= 0) {
            out << "@" << (fc.host_free + 1);
        } else {
            std::string ref;
            for (Dart dart : d.map.face_cycle(fc.host_face)) {
                EdgeId e = dart_edge(dart);
                if (e < d.n) {
                    if (!dart_is_forward(dart)) {
                        ref = "b" + std::to_string(e + 1);
                        break;
                    }
                    continue;
                }
                int path = -1, seg = -1;
                for (int p = 0; p < d.path_count(); ++p) {
                    int base = d.path_edge_base[p];
                    if (e >= base && e < base + d.segment_count(p)) {
                        path = p;
                        seg = e - base;
                        break;
                    }
                }
                char side = dart_is_forward(dart) ? '+' : '-';
                if (path < d.n)
                    ref = "s" + std::to_string(path + 1) + "." + std::to_string(seg) + side;
                else
                    ref = "y" + std::to_string(path - d.n + 1) + "." + std::to_string(seg) + side;
                break;
            }
            out << ref;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace

Document parse_document(const std::string& text) {
    std::vector<std::pair<int, std::string>> lines;
    {
        std::istringstream in(text);
        std::string line;
        int ln = 0;
        while (std::getline(in, line)) {
            ++ln;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            if (split_ws(line).empty()) continue;
            lines.push_back({ln, line});
        }
    }
    if (lines.empty()) throw ParseError(0, "empty document");
    auto header = split_ws(lines[0].second);
    if (header.size() != 3 || header[0] != "tilescott")
        throw ParseError(lines[0].first, "expected header 'tilescott v1 <tiling|diagram>'");
    if (header[1] != "v1") throw ParseError(lines[0].first, "unsupported version " + header[1]);
    if (header[2] == "tiling") return parse_tiling(lines, 1);
    if (header[2] == "diagram") return parse_diagram(lines, 1);
    throw ParseError(lines[0].first, "document kind must be tiling or diagram");
}

std::string serialize_document(const BicoloredTiling& t) { return serialize_tiling(t); }
std::string serialize_document(const PathDiagram& d) { return serialize_diagram(d); }
std::string serialize_document(const Document& doc) {
    if (std::holds_alternative<BicoloredTiling>(doc))
        return serialize_tiling(std::get<BicoloredTiling>(doc));
    return serialize_diagram(std::get<PathDiagram>(doc));
}

}  // namespace tilescott
