#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tilescott/explore.hpp"
#include "tilescott/io.hpp"
#include "tilescott/svg.hpp"

using namespace tilescott;

namespace {

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
}

BicoloredTiling require_tiling(const Document& doc) {
    if (!std::holds_alternative<BicoloredTiling>(doc))
        throw std::runtime_error("expected a tiling document");
    return std::get<BicoloredTiling>(doc);
}

PathDiagram require_diagram(const Document& doc) {
    if (!std::holds_alternative<PathDiagram>(doc))
        throw std::runtime_error("expected a diagram document");
    return std::get<PathDiagram>(doc);
}

// faces are addressed by their canonical traversal rank
FaceId face_by_rank(const PathDiagram& d, int want) {
    std::vector<int> rank;
    canonical_code(d.map, d.anchor(), CodeDecorations{}, nullptr, &rank);
    for (FaceId f = 0; f < d.map.face_count(); ++f)
        if (rank[f] == want) return f;
    throw std::runtime_error("no face with rank " + std::to_string(want));
}

std::string class_name(RegionClass c) {
    switch (c) {
        case RegionClass::Clockwise: return "cw";
        case RegionClass::Counterclockwise: return "ccw";
        case RegionClass::Alternating: return "alternating";
        default: return "mixed";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bicolored tilings, alternating path diagrams and the Scott map"};
    app.require_subcommand(1);

    std::string in_path, in2_path, out_path, mode = "primitive", kind = "tiling",
                format = "svg";
    int edge = -1, face = -1, limit = 10000, gen_n_min = 4, gen_n_max = 8, gen_ops = 6;
    uint64_t seed = 1;

    auto add_io = [&](CLI::App* cmd, bool two_inputs = false) {
        cmd->add_option("--in", in_path, "input document (default: stdin)");
        if (two_inputs) cmd->add_option("--in2", in2_path, "second input document")->required();
        cmd->add_option("--out", out_path, "output file (default: stdout)");
    };

    auto* c_validate = app.add_subcommand("validate", "check a document and report violations");
    add_io(c_validate);
    auto* c_scott = app.add_subcommand("scott", "apply the Scott map to a tiling");
    add_io(c_scott);
    auto* c_inv = app.add_subcommand("inv-scott", "reconstruct the tiling of a diagram");
    add_io(c_inv);
    auto* c_reduce = app.add_subcommand("reduce", "untwist oriented lenses in a diagram");
    add_io(c_reduce);
    auto* c_perm = app.add_subcommand("perm", "decorated permutation of a diagram or tiling");
    add_io(c_perm);
    auto* c_type = app.add_subcommand("type", "type (k,n) of a tiling");
    add_io(c_type);
    auto* c_labels = app.add_subcommand("labels", "region labels of a diagram");
    add_io(c_labels);
    auto* c_post = app.add_subcommand("is-postnikov", "test the Postnikov conditions");
    add_io(c_post);
    auto* c_flip = app.add_subcommand("flip", "flip an interior edge of a tiling");
    add_io(c_flip);
    c_flip->add_option("--edge", edge, "interior edge number (1-based)")->required();
    c_flip->add_option("--mode", mode, "primitive|general");
    auto* c_ex = app.add_subcommand("exchange", "geometric exchange at an alternating quad");
    add_io(c_ex);
    c_ex->add_option("--face", face, "face rank from `validate`/`labels` output")->required();
    auto* c_fc = app.add_subcommand("flip-class", "breadth-first flip equivalence class");
    add_io(c_fc);
    c_fc->add_option("--limit", limit, "node limit");
    c_fc->add_option("--mode", mode, "primitive|general");
    auto* c_eq = app.add_subcommand("equiv", "decide equivalence of two documents");
    add_io(c_eq, true);
    c_eq->add_option("--kind", kind, "tiling|diagram");
    auto* c_render = app.add_subcommand("render", "render a document");
    add_io(c_render);
    c_render->add_option("--format", format, "svg");
    auto* c_norm = app.add_subcommand("normalize", "merge black tiles of a tiling");
    add_io(c_norm);
    auto* c_gen = app.add_subcommand("gen", "emit a seeded random tiling document");
    c_gen->add_option("--seed", seed, "random seed");
    c_gen->add_option("--min-n", gen_n_min, "smallest boundary size");
    c_gen->add_option("--max-n", gen_n_max, "largest boundary size");
    c_gen->add_option("--ops", gen_ops, "number of random operations");
    c_gen->add_option("--out", out_path, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_validate->parsed()) {
            try {
                parse_document(read_input(in_path));
                write_output(out_path, "ok\n");
            } catch (const TilingError& e) {
                write_output(out_path, std::string(e.what()) + "\n");
                return 1;
            } catch (const DiagramError& e) {
                write_output(out_path, std::string(e.what()) + "\n");
                return 1;
            }
        } else if (c_scott->parsed()) {
            auto t = require_tiling(parse_document(read_input(in_path)));
            write_output(out_path, serialize_document(scott_map(t)));
        } else if (c_inv->parsed()) {
            auto d = require_diagram(parse_document(read_input(in_path)));
            write_output(out_path, serialize_document(inverse_scott(d)));
        } else if (c_reduce->parsed()) {
            auto d = require_diagram(parse_document(read_input(in_path)));
            write_output(out_path, serialize_document(reduce(d)));
        } else if (c_perm->parsed()) {
            Document doc = parse_document(read_input(in_path));
            PathDiagram d = std::holds_alternative<PathDiagram>(doc)
                                ? std::get<PathDiagram>(doc)
                                : scott_map(std::get<BicoloredTiling>(doc));
            write_output(out_path, decorated_permutation(d).to_string() + "\n");
        } else if (c_type->parsed()) {
            auto t = require_tiling(parse_document(read_input(in_path)));
            TilingType ty = tiling_type(t);
            std::ostringstream out;
            out << "type: (" << ty.k << "," << ty.n << ")  V=" << ty.vertices
                << " F=" << ty.white_tiles << "\n";
            write_output(out_path, out.str());
        } else if (c_labels->parsed()) {
            auto d = require_diagram(parse_document(read_input(in_path)));
            LabelReport rep = region_labels(d);
            std::vector<int> rank;
            canonical_code(d.map, d.anchor(), CodeDecorations{}, nullptr, &rank);
            std::ostringstream out;
            out << (rep.uniform ? "uniform k: " + std::to_string(rep.k) : std::string("non-uniform"))
                << "\n";
            for (const auto& r : rep.regions) {
                out << "region " << rank[r.face] << " (" << class_name(r.cls) << ", size "
                    << r.size << "):";
                for (int i : r.labels) out << " " << (i + 1);
                out << "\n";
            }
            write_output(out_path, out.str());
        } else if (c_post->parsed()) {
            auto d = require_diagram(parse_document(read_input(in_path)));
            PostnikovWitness w = is_postnikov(d);
            write_output(out_path,
                         w.is_postnikov ? "true\n" : "false: " + w.reason + "\n");
        } else if (c_flip->parsed()) {
            auto t = require_tiling(parse_document(read_input(in_path)));
            FlipMode m = mode == "general" ? FlipMode::General : FlipMode::Primitive;
            write_output(out_path, serialize_document(flip_edge(t, t.n + edge - 1, m)));
        } else if (c_ex->parsed()) {
            auto d = require_diagram(parse_document(read_input(in_path)));
            write_output(out_path, serialize_document(geometric_exchange(d, face_by_rank(d, face))));
        } else if (c_fc->parsed()) {
            auto t = require_tiling(parse_document(read_input(in_path)));
            FlipLimits lim;
            lim.max_nodes = limit;
            FlipMode m = mode == "general" ? FlipMode::General : FlipMode::Primitive;
            FlipClassReport rep = flip_class(t, lim, m);
            std::ostringstream out;
            out << "size: " << rep.size << "\n";
            if (rep.frontier_truncated) out << "truncated: true\n";
            out << decorated_permutation(scott_map(t)).to_string() << "\n";
            write_output(out_path, out.str());
        } else if (c_eq->parsed()) {
            Document a = parse_document(read_input(in_path));
            Document b = parse_document(read_input(in2_path));
            bool diagrams = std::holds_alternative<PathDiagram>(a);
            if (c_eq->count("--kind")) diagrams = kind == "diagram";
            std::ostringstream out;
            if (diagrams) {
                bool eq = diagrams_equivalent(require_diagram(a), require_diagram(b));
                out << (eq ? "equivalent" : "not equivalent") << "\n";
            } else {
                EquivalenceResult res = tilings_equivalent(require_tiling(a), require_tiling(b));
                out << (res.equivalent ? "equivalent" : "not equivalent") << "\n";
                if (!res.detail.empty()) out << res.detail << "\n";
            }
            write_output(out_path, out.str());
        } else if (c_render->parsed()) {
            if (format != "svg") throw std::runtime_error("only --format svg is supported");
            Document doc = parse_document(read_input(in_path));
            if (std::holds_alternative<BicoloredTiling>(doc))
                write_output(out_path, render_svg(std::get<BicoloredTiling>(doc)));
            else
                write_output(out_path, render_svg(std::get<PathDiagram>(doc)));
        } else if (c_norm->parsed()) {
            auto t = require_tiling(parse_document(read_input(in_path)));
            write_output(out_path, serialize_document(normalize_black(t)));
        } else if (c_gen->parsed()) {
            write_output(out_path,
                         serialize_document(random_tiling(seed, gen_n_min, gen_n_max, gen_ops)));
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const MapError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const TilingError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const DiagramError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
