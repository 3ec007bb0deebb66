// gsckit: command-line front end for the combinatorial GSC toolkit.
// Subcommands cover Property-P checks, collapse search, GSC certificates, the
// colour-changing and balancing processes, GPS builds, doubling verification,
// LAVA state graphs, and seeded fuzz suites. Exit codes: 0 pass, 1 check
// failure, 2 input error.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "gsckit/graph.hpp"
#include "gsckit/complex2.hpp"
#include "gsckit/flowmatrix.hpp"
#include "gsckit/colour.hpp"
#include "gsckit/balancing.hpp"
#include "gsckit/gps.hpp"
#include "gsckit/doubling.hpp"
#include "gsckit/lava.hpp"
#include "gsckit/generate.hpp"

using namespace gsckit;

namespace {

int log_level() {
    const char* v = std::getenv("GSCKIT_LOG");
    return v ? std::atoi(v) : 0;
}

void logmsg(const std::string& s) {
    if (log_level() > 0) std::cerr << "[gsckit] " << s << "\n";
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') { ++line; col = 1; }
            else ++col;
        }
        throw input_error("malformed JSON in '" + path + "' at line " + std::to_string(line) +
                          ", column " + std::to_string(col));
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << text;
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

std::array<int, 6> parse_bounds(const std::vector<int>& b) {
    if (b.size() == 2) return {b[0], b[1], b[0], b[1], b[0], b[1]};
    if (b.size() == 6) return {b[0], b[1], b[2], b[3], b[4], b[5]};
    throw input_error("--bounds wants 2 or 6 integers");
}

// ---------------------------------------------------------------------------
// fuzz suites

struct FuzzCase {
    std::string name;
    bool pass = false;
    std::string detail;
};

using Suite = std::function<FuzzCase(Rng&, std::uint64_t, std::size_t)>;

std::string repro(const std::string& suite, std::uint64_t seed, std::size_t i) {
    return " | reproduce: gsckit fuzz " + suite + " --seed " + std::to_string(seed) + " --count " +
           std::to_string(i + 1);
}

FuzzCase fuzz_colour(Rng& rng, std::uint64_t seed, std::size_t i) {
    FuzzCase c{"colour." + std::to_string(i)};
    auto inst = random_property_p_pair(rng, 12);
    try {
        auto trace = run_colour_change(inst.g, inst.red, inst.blue);
        auto verdict = verify_trace(inst.g, inst.red, inst.blue, trace);
        c.pass = verdict.ok;
        if (!verdict.ok) c.detail = verdict.reason;
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = e.what();
    }
    if (!c.pass) c.detail += repro("colour", seed, i);
    return c;
}

FuzzCase fuzz_balance(Rng& rng, std::uint64_t seed, std::size_t i) {
    FuzzCase c{"balance." + std::to_string(i)};
    try {
        auto inst = random_balancing_instance(rng, rng.below(4));
        balance(inst, id_red_order(inst));
        c.pass = true;
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string(e.what()) + repro("balance", seed, i);
    }
    return c;
}

FuzzCase fuzz_homology(Rng& rng, std::uint64_t seed, std::size_t i) {
    FuzzCase c{"homology." + std::to_string(i)};
    try {
        TwoComplex k = random_complex(rng, 7, 4);
        auto before = gf2_homology_ranks(k);
        for (int step = 0; step < 20; ++step) {
            auto fp = free_faces(k);
            if (fp.empty()) break;
            k = elementary_collapse(k, fp[rng.below(fp.size())]);
            if (!(gf2_homology_ranks(k) == before))
                throw structural_error("betti numbers changed under collapse");
        }
        c.pass = true;
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string(e.what()) + repro("homology", seed, i);
    }
    return c;
}

FuzzCase fuzz_gsc(Rng& rng, std::uint64_t seed, std::size_t i) {
    FuzzCase c{"gsc." + std::to_string(i)};
    try {
        auto xi = random_xi_matrix(rng, 1 + rng.below(5));
        auto pc = make_paired_complex(xi);
        auto cert = gsc_certificate(pc.k, pc.spots);
        auto res = collapse_to_spine(pc.k, pc.spine);
        c.pass = cert.gsc == res.found();
        if (!c.pass) c.detail = "oracle disagreement";
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = e.what();
    }
    if (!c.pass) c.detail += repro("gsc", seed, i);
    return c;
}

FuzzCase fuzz_lava(Rng& rng, std::uint64_t seed, std::size_t i) {
    FuzzCase c{"lava." + std::to_string(i)};
    try {
        auto m = random_easy_matrix(rng, 2 + rng.below(5));
        auto sg = build_state_graph(m);
        for (int state : sg.states)
            for (std::size_t d = 1; d <= 4; ++d) {
                auto fam = transversal_intervals(sg, state, d);
                for (std::size_t a = 0; a < fam.size(); ++a)
                    for (std::size_t b2 = a + 1; b2 < fam.size(); ++b2)
                        if (!(fam[a].disjoint(fam[b2]) || fam[a].contains(fam[b2]) ||
                              fam[b2].contains(fam[a])))
                            throw structural_error("family not laminar");
            }
        c.pass = true;
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string(e.what()) + repro("lava", seed, i);
    }
    return c;
}

FuzzCase fuzz_split(Rng& rng, std::uint64_t seed, std::size_t i) {
    FuzzCase c{"split." + std::to_string(i)};
    try {
        auto inst = random_property_p_pair(rng, 12);
        Graph tree = delete_spots(inst.g, inst.red);
        for (const auto& [eid, e] : tree.edges) {
            SpotSet cut = inst.red;
            cut.spots.insert(eid);
            auto p = split_at_spot(inst.g, cut, eid);
            if (p.blocks.size() != 2) throw structural_error("split did not give two blocks");
        }
        if (inst.g.betti1() != inst.red.spots.size())
            throw structural_error("betti number differs from spot count");
        c.pass = true;
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string(e.what()) + repro("split", seed, i);
    }
    return c;
}

// deliberately broken traces: the expected failures must be flagged
FuzzCase fuzz_inject(Rng& rng, std::uint64_t seed, std::size_t i) {
    FuzzCase c{"inject." + std::to_string(i)};
    (void)seed;
    try {
        auto inst = random_property_p_pair(rng, 8);
        auto trace = run_colour_change(inst.g, inst.red, inst.blue);
        if (trace.steps.empty()) {
            c.pass = true;
            c.detail = "no steps to tamper";
            return c;
        }
        auto& step = trace.steps[rng.below(trace.steps.size())];
        step.cycle.clear();
        step.cycle.push_back(WalkStep{step.r_spot, 1});
        bool accepted = verify_trace(inst.g, inst.red, inst.blue, trace).ok;
        c.pass = false; // tampered cases are expected failures
        c.detail = accepted ? "TAMPERED TRACE ACCEPTED" : "expected failure flagged";
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = e.what();
    }
    return c;
}

// Every case draws from its own seed derived from (seed, index), so a worker
// pool can run cases in any order and the report is still byte-identical;
// output is canonicalized by case index.
int run_fuzz(const std::string& suite, std::uint64_t seed, std::size_t count,
             const std::string& out_path) {
    std::map<std::string, Suite> suites = {
        {"colour", fuzz_colour}, {"balance", fuzz_balance}, {"homology", fuzz_homology},
        {"gsc", fuzz_gsc},       {"lava", fuzz_lava},       {"split", fuzz_split},
        {"inject", fuzz_inject},
    };
    auto it = suites.find(suite);
    if (it == suites.end()) throw input_error("unknown fuzz suite '" + suite + "'");
    std::vector<FuzzCase> cases(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            Rng case_rng(seed * 0x9e3779b97f4a7c15ULL + i);
            cases[i] = it->second(case_rng, seed, i);
        }
    };
    std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                                                std::max<std::size_t>(1, count));
    workers = std::min<std::size_t>(workers, 8);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    Json report;
    report["suite"] = suite;
    report["seed"] = seed;
    report["cases"] = Json::array();
    std::size_t failures = 0;
    for (const auto& c : cases) {
        if (!c.pass) ++failures;
        Json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        report["cases"].push_back(jc);
    }
    report["failures"] = failures;
    write_json(out_path, report);
    logmsg(suite + ": " + std::to_string(count - failures) + "/" + std::to_string(count) +
           " passed");
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gsckit: Property-P spot sets, collapsing flows, GSC certificates"};
    app.require_subcommand(1);

    std::string in_path, out_path = "-", dot_prefix;
    std::uint64_t seed = 1;
    std::size_t count = 100, depth = 3, max_faces = 8;
    std::string eps_str = "1/8";
    int dim = 3;
    std::vector<int> bounds_v = {0, 6};
    std::vector<std::string> times_v = {"0", "1", "2", "3", "4"};
    int state_id = -1;

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--in", in_path, "input file")->required();
        cmd->add_option("--out", out_path, "output file ('-' for stdout)");
    };

    auto* c_graph = app.add_subcommand("graph", "graph utilities");
    auto* c_checkp = c_graph->add_subcommand("check-p", "Property P of the red and blue spot sets");
    add_io(c_checkp);
    c_checkp->add_option("--dot", dot_prefix, "also write a DOT rendering here");

    auto* c_collapse = app.add_subcommand("collapse", "collapse a complex onto a spine");
    add_io(c_collapse);
    c_collapse->add_option("--max-faces", max_faces, "exhaustive search bound");

    auto* c_gsc = app.add_subcommand("gsc", "GSC certificate for a spotted complex");
    add_io(c_gsc);

    auto* c_colour = app.add_subcommand("colour-change", "run the colour-changing process");
    add_io(c_colour);
    c_colour->add_option("--dot", dot_prefix, "also write a DOT overlay here");

    auto* c_balance = app.add_subcommand("balance", "run the balancing slides");
    add_io(c_balance);
    c_balance->add_option("--dot", dot_prefix, "write DOT before/after with this prefix");

    auto* c_gps = app.add_subcommand("gps", "GPS cell decompositions");
    auto* c_gps_build = c_gps->add_subcommand("build", "build the standard structure");
    auto* c_gps_verify = c_gps->add_subcommand("verify", "structure condition report");
    std::string obj_path;
    for (auto* cmd : {c_gps_build, c_gps_verify}) {
        cmd->add_option("--dim", dim, "3 or 4");
        cmd->add_option("--bounds", bounds_v, "box bounds: x0 x1 [y0 y1 z0 z1]");
        cmd->add_option("--eps", eps_str, "perturbation, a rational p/q");
        cmd->add_option("--times", times_v, "slice times for dim 4");
        cmd->add_option("--out", out_path, "output file");
    }
    c_gps_build->add_option("--obj", obj_path, "also write an OBJ line export here");

    auto* c_double = app.add_subcommand("double", "old => new => DOUBLE machinery");
    std::string double_mode;
    c_double->add_option("mode", double_mode, "build | verify-red | verify-blue | punchlines")
        ->required();
    add_io(c_double);

    auto* c_lava = app.add_subcommand("lava", "LAVA state graph machinery");
    std::string lava_mode;
    c_lava->add_option("mode", lava_mode, "build | transversal | traintrack")->required();
    add_io(c_lava);
    c_lava->add_option("--depth", depth, "trajectory depth");
    c_lava->add_option("--state", state_id, "box/state id for transversal");

    auto* c_fuzz = app.add_subcommand("fuzz", "seeded fuzz suites");
    std::string suite;
    c_fuzz->add_option("suite", suite, "colour | balance | homology | gsc | lava | split | inject")
        ->required();
    c_fuzz->add_option("--seed", seed, "rng seed");
    c_fuzz->add_option("--count", count, "number of cases");
    c_fuzz->add_option("--out", out_path, "report file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_checkp->parsed()) {
            SpotSet red, blue;
            Graph g = graph_from_json(load_json(in_path), &red, &blue);
            Json j;
            j["red"] = is_property_p(g, red);
            j["blue"] = is_property_p(g, blue);
            j["betti1"] = g.betti1();
            write_json(out_path, j);
            if (!dot_prefix.empty()) write_text(dot_prefix, graph_to_dot(g, &red, &blue));
            return (j["red"].get<bool>() && j["blue"].get<bool>()) ? 0 : 1;
        }
        if (c_collapse->parsed()) {
            Json in = load_json(in_path);
            TwoComplex k = complex_from_json(in.contains("complex") ? in.at("complex") : in);
            CellSet spine;
            if (in.contains("spine")) {
                for (const auto& v : in.at("spine").value("vertices", Json::array()))
                    spine.vertices.insert(v.get<int>());
                for (const auto& e : in.at("spine").value("edges", Json::array()))
                    spine.edges.insert(e.get<int>());
                for (const auto& f : in.at("spine").value("faces", Json::array()))
                    spine.faces.insert(f.get<int>());
            } else {
                spine = CellSet::single_vertex(*k.skeleton.vertices.begin());
            }
            auto res = collapse_to_spine(k, spine, max_faces);
            Json j;
            j["status"] = res.status == CollapseStatus::Found
                              ? "found"
                              : (res.status == CollapseStatus::Impossible ? "impossible"
                                                                          : "bound-exceeded");
            j["schedule"] = res.schedule.to_json();
            write_json(out_path, j);
            return res.found() ? 0 : 1;
        }
        if (c_gsc->parsed()) {
            SpotSet red, blue;
            TwoComplex k = complex_from_json(load_json(in_path), &red, &blue);
            auto cert = gsc_certificate(k, red);
            write_json(out_path, cert.to_json());
            return cert.gsc ? 0 : 1;
        }
        if (c_colour->parsed()) {
            SpotSet red, blue;
            Graph g = graph_from_json(load_json(in_path), &red, &blue);
            auto trace = run_colour_change(g, red, blue);
            auto verdict = verify_trace(g, red, blue, trace);
            Json j;
            j["trace"] = trace.to_json();
            j["verified"] = verdict.ok;
            write_json(out_path, j);
            if (!dot_prefix.empty()) {
                // overlay: which witness cycles run through each edge
                std::map<int, std::vector<std::size_t>> through;
                for (const auto& cell : trace.steps)
                    for (const auto& st : cell.cycle) through[st.edge].push_back(cell.j);
                std::ostringstream os;
                os << "graph colour_change {\n";
                for (int v : g.vertices) os << "  v" << v << ";\n";
                for (const auto& [id, e] : g.edges) {
                    bool r = red.contains(id), b = blue.contains(id);
                    os << "  v" << e.u << " -- v" << e.v << " [label=\"e" << id;
                    if (through.count(id)) {
                        os << " w";
                        for (std::size_t stp : through[id]) os << ":" << stp;
                    }
                    os << "\"";
                    if (r && b) os << ", color=purple";
                    else if (r) os << ", color=red";
                    else if (b) os << ", color=blue";
                    else if (through.count(id)) os << ", style=bold";
                    os << "];\n";
                }
                os << "}\n";
                write_text(dot_prefix, os.str());
            }
            return verdict.ok ? 0 : 1;
        }
        if (c_balance->parsed()) {
            Json in = load_json(in_path);
            BalancingInstance inst;
            inst.g = graph_from_json(in, &inst.red, &inst.blue);
            if (!in.contains("sub")) throw input_error("balance input wants a 'sub' object");
            for (const auto& v : in.at("sub").at("vertices")) inst.sub_vertices.insert(v.get<int>());
            for (const auto& e : in.at("sub").at("edges")) inst.sub_edges.insert(e.get<int>());
            if (!dot_prefix.empty())
                write_text(dot_prefix + ".before.dot", graph_to_dot(inst.g, &inst.red, &inst.blue));
            BalancingInstance before = inst;
            auto out = balance(inst, id_red_order(inst));
            Json j;
            j["chi"] = out.records.size();
            j["promotion"] = promotion_report(before, out).to_json();
            j["records"] = Json::array();
            for (const auto& r : out.records) j["records"].push_back(r.to_json());
            j["balanced"] = graph_to_json(out.balanced.g, &out.balanced.red, &out.balanced.blue);
            Json sub;
            sub["vertices"] = Json::array();
            for (int v : out.balanced.sub_vertices) sub["vertices"].push_back(v);
            sub["edges"] = Json::array();
            for (int e : out.balanced.sub_edges) sub["edges"].push_back(e);
            j["balanced"]["sub"] = sub;
            write_json(out_path, j);
            if (!dot_prefix.empty())
                write_text(dot_prefix + ".after.dot",
                           graph_to_dot(out.balanced.g, &out.balanced.red, &out.balanced.blue));
            return 0;
        }
        if (c_gps_build->parsed() || c_gps_verify->parsed()) {
            Rat eps = Rat::parse(eps_str);
            auto bounds = parse_bounds(bounds_v);
            GpsComplex g;
            if (dim == 3) g = build_gps3(bounds, eps);
            else if (dim == 4) {
                std::vector<Rat> times;
                for (const auto& t : times_v) times.push_back(Rat::parse(t));
                g = build_gps4(bounds, times, eps);
            } else
                throw input_error("--dim wants 3 or 4");
            if (c_gps_build->parsed()) {
                write_json(out_path, gps_to_json(g));
                if (!obj_path.empty()) write_text(obj_path, gps_to_obj(g));
                return 0;
            }
            auto rep = verify_definition5(g);
            Json j;
            j["a"] = rep.a;
            j["b"] = rep.b;
            j["c"] = rep.c;
            j["d"] = rep.d;
            j["e"] = rep.e;
            j["f"] = rep.f;
            j["notes"] = rep.notes;
            write_json(out_path, j);
            return rep.all() ? 0 : 1;
        }
        if (c_double->parsed()) {
            Json in = load_json(in_path);
            SpotSet red, blue;
            TwoComplex x2 = complex_from_json(in.at("complex"), &red, &blue);
            std::set<int> delta;
            for (const auto& f : in.at("delta_faces")) delta.insert(f.get<int>());
            auto nc = build_new(x2, delta, red, blue);
            auto d = build_double(nc);
            if (double_mode == "build") {
                write_json(out_path, double_to_json(d));
                return 0;
            }
            if (double_mode == "verify-red") {
                auto sched = verify_red_collapse(d);
                Json j;
                j["steps"] = sched.to_json();
                write_json(out_path, j);
                return 0;
            }
            if (double_mode == "verify-blue") {
                auto sched = verify_blue_collapse(d);
                Json j;
                j["steps"] = sched.to_json();
                write_json(out_path, j);
                return 0;
            }
            if (double_mode == "punchlines") {
                auto red_s = verify_red_collapse(d);
                auto blue_s = verify_blue_collapse(d);
                auto rep = check_punchlines(d, red_s, blue_s);
                auto mats = double_matrices(d);
                Json j;
                j["punchlineA"] = rep.gamma_bottom_in_gamma1;
                j["punchlineB"] = rep.arrows_coincide;
                j["punchlineC"] = rep.no_band_face_on_delta;
                j["redMatrixEasy"] = classify(mats.red).verdict == MatrixClass::Easy;
                j["blueMatrixEasy"] = classify(mats.blue).verdict == MatrixClass::Easy;
                j["violations"] = rep.violations;
                write_json(out_path, j);
                return (rep.all() && j["redMatrixEasy"].get<bool>() &&
                        j["blueMatrixEasy"].get<bool>())
                           ? 0
                           : 1;
            }
            throw input_error("unknown double mode '" + double_mode + "'");
        }
        if (c_lava->parsed()) {
            auto m = IntersectionMatrix::from_json(load_json(in_path));
            auto deg = detect_degenerate(m);
            if (!deg.ok) {
                Json j;
                j["degenerate"] = "NON_COMMUTATIVE";
                j["cycle"] = deg.cycle;
                write_json(out_path, j);
                return 1;
            }
            auto sg = build_state_graph(m);
            if (lava_mode == "build") {
                Json j = sg.to_json();
                j["dot"] = sg.to_dot();
                write_json(out_path, j);
                return 0;
            }
            if (lava_mode == "transversal") {
                int state = state_id >= 0 ? state_id : sg.states.front();
                Json fams = Json::array();
                for (std::size_t d2 = 1; d2 <= depth; ++d2) {
                    Json fam = Json::array();
                    for (const auto& iv : transversal_intervals(sg, state, d2))
                        fam.push_back({iv.lo.str(), iv.hi.str()});
                    fams.push_back(fam);
                }
                Json j;
                j["state"] = state;
                j["families"] = fams;
                write_json(out_path, j);
                return 0;
            }
            if (lava_mode == "traintrack") {
                Json comps = Json::array();
                for (const auto& comp : state_components(sg)) {
                    auto tt = build_train_track(sg, comp);
                    Json jc;
                    jc["states"] = comp;
                    jc["branchPoints"] = Json::array();
                    for (const auto& p : tt.branch_set)
                        jc["branchPoints"].push_back({{"state", p.state}, {"coord", p.coord.str()}});
                    jc["edges"] = Json::array();
                    for (const auto& e : tt.edges)
                        jc["edges"].push_back(
                            {{"state", e.state}, {"lo", e.lo.str()}, {"hi", e.hi.str()}});
                    comps.push_back(jc);
                }
                Json j;
                j["components"] = comps;
                write_json(out_path, j);
                return 0;
            }
            throw input_error("unknown lava mode '" + lava_mode + "'");
        }
        if (c_fuzz->parsed()) return run_fuzz(suite, seed, count, out_path);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const structural_error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
