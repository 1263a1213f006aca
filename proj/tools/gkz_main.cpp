#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gkz/errors.hpp"
#include "gkz/formulas.hpp"
#include "gkz/oracle.hpp"
#include "gkz/parallel.hpp"
#include "gkz/params.hpp"
#include "gkz/series.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace gkz;

namespace {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Problem {
    IntMat a;
    std::optional<RatVec> beta;
    std::optional<RatVec> beta2;
    std::optional<RatVec> w;
    long budget = kDefaultBudget;
    Rat order = Rat(10);
    int window_lo = 0, window_hi = 6;
    long search_bound = 6;
    bool perturb = false;
    int threads = 0;
};

Rat parse_rat_field(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    throw ParseError("rationals must be strings like \"1/2\" or integers");
}

RatVec parse_rat_vec(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    RatVec v;
    for (const auto& e : j) v.push_back(parse_rat_field(e));
    return v;
}

Problem parse_problem(const json& j) {
    Problem p;
    if (!j.is_object()) throw ParseError("problem file must be a JSON object");
    if (!j.contains("A")) throw ParseError("missing matrix \"A\"");
    const json& ja = j.at("A");
    if (!ja.is_array() || ja.empty() || !ja[0].is_array())
        throw ParseError("\"A\" must be an array of integer rows");
    int rows = int(ja.size()), cols = int(ja[0].size());
    p.a = IntMat(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (int(ja[std::size_t(i)].size()) != cols) throw ParseError("ragged matrix \"A\"");
        for (int c = 0; c < cols; ++c) {
            const json& e = ja[std::size_t(i)][std::size_t(c)];
            if (e.is_number_integer()) p.a(i, c) = e.get<long long>();
            else if (e.is_string()) p.a(i, c) = Int(e.get<std::string>());
            else throw ParseError("matrix entries must be integers");
        }
    }
    if (j.contains("beta")) {
        p.beta = parse_rat_vec(j.at("beta"), "beta");
        if (int(p.beta->size()) != rows) throw ParseError("beta length must match the rows of A");
    }
    if (j.contains("beta2")) {
        p.beta2 = parse_rat_vec(j.at("beta2"), "beta2");
        if (int(p.beta2->size()) != rows) throw ParseError("beta2 length must match the rows of A");
    }
    if (j.contains("w")) {
        p.w = parse_rat_vec(j.at("w"), "w");
        if (int(p.w->size()) != cols) throw ParseError("w length must match the columns of A");
    }
    if (j.contains("options")) {
        const json& o = j.at("options");
        if (!o.is_object()) throw ParseError("\"options\" must be an object");
        if (o.contains("budget")) p.budget = o.at("budget").get<long>();
        if (o.contains("order")) p.order = parse_rat_field(o.at("order"));
        if (o.contains("window")) {
            const json& wnd = o.at("window");
            if (!wnd.is_array() || wnd.size() != 2) throw ParseError("window must be [lo, hi]");
            p.window_lo = wnd[0].get<int>();
            p.window_hi = wnd[1].get<int>();
        }
        if (o.contains("search_bound")) p.search_bound = o.at("search_bound").get<long>();
        if (o.contains("perturb")) p.perturb = o.at("perturb").get<bool>();
        if (o.contains("threads")) p.threads = o.at("threads").get<int>();
    }
    return p;
}

json rat_vec_json(const RatVec& v) {
    json a = json::array();
    for (const Rat& q : v) a.push_back(rat_to_string(q));
    return a;
}

json int_vec_json(const IntVec& v) {
    json a = json::array();
    for (const Int& q : v) a.push_back(q.str());
    return a;
}

json index_set_json(const std::vector<int>& s) {
    json a = json::array();
    for (int i : s) a.push_back(i + 1);  // 1-based on the wire
    return a;
}

json face_json(const Face& f) {
    json o;
    o["members"] = index_set_json(f.members);
    o["vertices"] = index_set_json(f.vertices);
    o["dim"] = f.span_dim;
    return o;
}

json eclass_json(const EClass& c) {
    json o;
    o["face"] = index_set_json(c.face.members);
    o["rep"] = rat_vec_json(c.rep);
    return o;
}

json breakdown_json(const DimensionBreakdown& bd) {
    json lines = json::array();
    for (const auto& l : bd.lines) {
        json o;
        o["face"] = index_set_json(l.face.members);
        o["lambda"] = rat_vec_json(l.lambda.rep);
        o["volume"] = l.volume.str();
        o["correction"] = l.correction.str();
        o["contribution"] = l.contribution.str();
        lines.push_back(o);
    }
    return lines;
}

json echo_input(const Problem& p, const std::string& command) {
    json in;
    json a = json::array();
    for (int i = 0; i < p.a.rows(); ++i) {
        json row = json::array();
        for (int c = 0; c < p.a.cols(); ++c) row.push_back(p.a(i, c).str());
        a.push_back(row);
    }
    in["A"] = a;
    if (p.beta) in["beta"] = rat_vec_json(*p.beta);
    if (p.beta2) in["beta2"] = rat_vec_json(*p.beta2);
    if (p.w) in["w"] = rat_vec_json(*p.w);
    json opts;
    opts["budget"] = p.budget;
    opts["order"] = rat_to_string(p.order);
    opts["window"] = json::array({p.window_lo, p.window_hi});
    opts["search_bound"] = p.search_bound;
    opts["perturb"] = p.perturb;
    opts["threads"] = p.threads;
    in["options"] = opts;
    json out;
    out["command"] = command;
    out["input"] = in;
    return out;
}

const RatVec& require_beta(const Problem& p) {
    if (!p.beta) throw ParseError("this command needs \"beta\"");
    return *p.beta;
}

const RatVec& require_w(const Problem& p) {
    if (!p.w) throw ParseError("this command needs \"w\"");
    return *p.w;
}

bool same_cells(const Triangulation& a, const Triangulation& b) {
    if (a.maximal_cells.size() != b.maximal_cells.size()) return false;
    for (std::size_t i = 0; i < a.maximal_cells.size(); ++i)
        if (!(a.maximal_cells[i].vertices == b.maximal_cells[i].vertices &&
              a.maximal_cells[i].members == b.maximal_cells[i].members))
            return false;
    return true;
}

bool same_class_sets(const std::vector<EClass>& a, const std::vector<EClass>& b) {
    if (a.size() != b.size()) return false;
    for (const EClass& x : a) {
        bool found = false;
        for (const EClass& y : b) found = found || eclass_equal(x, y);
        if (!found) return false;
    }
    return true;
}

json cmd_triangulate(const Configuration& cfg, const Problem& p, bool verify) {
    TriangulationOptions opt;
    opt.perturb = p.perturb;
    Triangulation t = regular_triangulation(cfg, require_w(p), opt);
    json r;
    r["generic"] = is_generic_weight(cfg, *p.w);
    r["perturbed"] = t.perturbed;
    json cells = json::array();
    for (const Face& c : t.maximal_cells) cells.push_back(face_json(c));
    r["cells"] = cells;
    json faces = json::array();
    for (const Face& f : t.face_poset) faces.push_back(face_json(f));
    r["faces"] = faces;
    if (verify && !t.perturbed) r["verified"] = same_cells(t, oracle_lower_hull(cfg, *p.w));
    return r;
}

json cmd_faces(const Configuration& cfg) {
    json faces = json::array();
    for (const Face& f : cone_faces(cfg)) {
        json o = face_json(f);
        o["volume"] = normalized_volume(cfg, f).str();
        faces.push_back(o);
    }
    json r;
    r["faces"] = faces;
    return r;
}

json cmd_etau(const Configuration& cfg, const Problem& p, bool verify) {
    const RatVec& beta = require_beta(p);
    std::vector<Face> faces;
    if (p.w) {
        TriangulationOptions opt;
        opt.perturb = p.perturb;
        faces = regular_triangulation(cfg, *p.w, opt).face_poset;
    } else {
        faces = cone_faces(cfg);
    }
    EtauEngine engine(cfg);
    engine.prepare(faces);
    json entries = json::array();
    bool verified = true;
    for (const Face& f : faces) {
        auto classes = engine.e_tau(f, beta, p.budget);
        json o;
        o["face"] = index_set_json(f.members);
        json cl = json::array();
        for (const EClass& c : classes) cl.push_back(rat_vec_json(c.rep));
        o["classes"] = cl;
        entries.push_back(o);
        if (verify)
            verified = verified &&
                       same_class_sets(classes, oracle_e_tau(cfg, f, beta, int(p.search_bound) + 4));
    }
    json r;
    r["faces"] = entries;
    if (verify) r["verified"] = verified;
    return r;
}

json cmd_minface(const Configuration& cfg, const Problem& p) {
    json r;
    json faces = json::array();
    for (const Face& f : minface(cfg, require_beta(p), p.budget)) faces.push_back(face_json(f));
    r["minface"] = faces;
    return r;
}

json cmd_dim(const Configuration& cfg, const Problem& p, bool verify) {
    const RatVec& beta = require_beta(p);
    const RatVec& w = require_w(p);
    auto bd = dim_log_free(cfg, beta, w, p.budget);
    json r;
    r["dimension"] = bd.total.str();
    r["breakdown"] = breakdown_json(bd);
    if (verify) r["verified"] = Int(minex(cfg, beta, w, p.budget).size()) == bd.total;
    return r;
}

json cmd_rank(const Configuration& cfg, const Problem& p, bool verify) {
    auto res = rank_simplex(cfg, require_beta(p), p.budget);
    json r;
    r["rank"] = res.rank.str();
    r["volume"] = res.volume.str();
    r["exceptional"] = res.exceptional;
    r["weight"] = rat_vec_json(res.weight);
    r["perturbed"] = res.perturbed;
    r["breakdown"] = breakdown_json(res.breakdown);
    if (verify) {
        // the rank formula counts the minimal-support exponents; retry weight
        // patterns when the first one has ties on some N_v
        json verified = nullptr;
        for (int attempt = 0; attempt < 8 && verified.is_null(); ++attempt) {
            try {
                Triangulation t = single_cell_triangulation(cfg, attempt);
                if (t.perturbed) break;
                verified = Int(minex(cfg, *p.beta, t.weight, p.budget).size()) == res.rank;
            } catch (const NonGenericWeight&) {
                continue;
            }
        }
        r["verified"] = verified;
    }
    return r;
}

json cmd_exceptional(const Configuration& cfg, const Problem& p) {
    auto res = is_exceptional(cfg, require_beta(p), p.budget);
    json r;
    r["exceptional"] = res.exceptional;
    if (res.witness) {
        json w;
        w["tau1"] = index_set_json(res.witness->tau1.members);
        w["tau2"] = index_set_json(res.witness->tau2.members);
        w["lambda"] = rat_vec_json(res.witness->lambda);
        r["witness"] = w;
    } else {
        r["witness"] = nullptr;
    }
    return r;
}

json cmd_sweep(const Configuration& cfg, const Problem& p) {
    auto hits = exceptional_sweep(cfg, p.window_lo, p.window_hi, p.budget);
    json r;
    r["window"] = json::array({p.window_lo, p.window_hi});
    json params = json::array();
    for (const Parameter& beta : hits) params.push_back(rat_vec_json(beta));
    r["parameters"] = params;
    return r;
}

json cmd_cm(const Configuration& cfg, const Problem& p) {
    auto res = is_cohen_macaulay(cfg, p.search_bound);
    json r;
    switch (res.status) {
        case CMStatus::CohenMacaulay: r["cohen_macaulay"] = "yes"; break;
        case CMStatus::NotCohenMacaulay: r["cohen_macaulay"] = "no"; break;
        case CMStatus::Inconclusive: r["cohen_macaulay"] = "inconclusive"; break;
    }
    json holes = json::array();
    for (const IntVec& h : res.holes) holes.push_back(int_vec_json(h));
    r["holes"] = holes;
    if (res.witness) {
        json w;
        w["beta"] = int_vec_json(res.witness->beta_hole);
        auto shifts_json = [](const std::map<int, Int>& m) {
            json o = json::object();
            for (const auto& [col, e] : m) o[std::to_string(col + 1)] = e.str();
            return o;
        };
        w["m1"] = shifts_json(res.witness->m1);
        w["m2"] = shifts_json(res.witness->m2);
        r["witness"] = w;
    } else {
        r["witness"] = nullptr;
    }
    return r;
}

json cmd_series(const Configuration& cfg, const Problem& p, bool verify) {
    const RatVec& beta = require_beta(p);
    const RatVec& w = require_w(p);
    auto exponents = minex(cfg, beta, w, p.budget);
    json list = json::array();
    for (const Exponent& e : exponents) {
        TruncatedSeries s = phi_series(cfg, e, w, p.order, p.budget);
        json o;
        o["v"] = rat_vec_json(e.v);
        o["face"] = index_set_json(e.face.members);
        o["lambda"] = rat_vec_json(e.klass.rep);
        o["polynomial"] = s.polynomial;
        json terms = json::array();
        for (const auto& [u, c] : s.terms) {
            json term;
            term["u"] = int_vec_json(u);
            term["coeff"] = rat_to_string(c);
            terms.push_back(term);
        }
        o["terms"] = terms;
        if (verify) {
            auto report = verify_annihilation(cfg, s, beta, 4, p.budget);
            json ver;
            ver["euler_exact"] = report.euler_exact;
            json boxes = json::array();
            for (const auto& b : report.boxes) {
                json bo;
                bo["op"] = int_vec_json(b.op);
                bo["vanished"] = b.vanished;
                bo["checked_up_to"] = rat_to_string(b.checked_up_to);
                boxes.push_back(bo);
            }
            ver["boxes"] = boxes;
            ver["series_recurrence"] = oracle_series_check(cfg, s);
            ver["pass"] = report.all_pass();
            o["annihilation"] = ver;
        }
        list.push_back(o);
    }
    json r;
    r["exponents"] = list;
    return r;
}

json cmd_iso(const Configuration& cfg, const Problem& p) {
    const RatVec& beta = require_beta(p);
    if (!p.beta2) throw ParseError("iso needs \"beta2\"");
    Fingerprint f1 = fingerprint(cfg, beta, p.budget);
    Fingerprint f2 = fingerprint(cfg, *p.beta2, p.budget);
    auto diff = fingerprint_diff(f1, f2);
    json r;
    r["isomorphic"] = diff.empty();
    json faces = json::array();
    for (const Face& f : diff) faces.push_back(index_set_json(f.members));
    r["differing_faces"] = faces;
    return r;
}

json cmd_verify() {
    json checks = json::array();
    bool all = true;
    auto add = [&](const std::string& name, bool pass) {
        json o;
        o["name"] = name;
        o["pass"] = pass;
        checks.push_back(o);
        all = all && pass;
        std::cerr << (pass ? "PASS " : "FAIL ") << name << "\n";
    };

    IntMat small_m(2, 3);
    {
        long rows[2][3] = {{1, 1, 1}, {0, 1, 2}};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j) small_m(i, j) = rows[i][j];
    }
    Configuration small = make_configuration(small_m);
    Parameter beta{Rat(1), Rat(1)};
    RatVec w{Rat(0), Rat(1), Rat(0)}, w2{Rat(0), Rat(-1), Rat(0)};

    add("segment: dimension 2 for the one-cell triangulation",
        dim_log_free(small, beta, w).total == 2);
    add("segment: dimension 1 for the two-cell triangulation",
        dim_log_free(small, beta, w2).total == 1);
    {
        auto mx = minex(small, beta, w);
        bool ok = mx.size() == 2 && mx[0].v == RatVec{Rat(0), Rat(1), Rat(0)} &&
                  mx[1].v == RatVec{Rat(1, 2), Rat(0), Rat(1, 2)};
        add("segment: exponents (0,1,0) and (1/2,0,1/2)", ok);
        auto s = phi_series(small, mx[0], w, Rat(10));
        add("segment: the polynomial solution is the single monomial x2",
            s.terms.size() == 1 && s.terms[0].second == 1 && s.polynomial);
        auto s2 = phi_series(small, mx[1], w, Rat(10));
        add("segment: series annihilated by the box operators",
            verify_annihilation(small, s2, beta, 4).all_pass());
    }

    IntMat big_m(3, 9);
    {
        long rows[3][9] = {{1, 1, 1, 1, 1, 1, 1, 1, 1},
                           {0, 1, 2, 3, 0, 2, 0, 1, 0},
                           {0, 0, 0, 0, 1, 1, 2, 2, 3}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 9; ++j) big_m(i, j) = rows[i][j];
    }
    Configuration big = make_configuration(big_m);
    Parameter beta0{Rat(1), Rat(1), Rat(1)};
    {
        std::vector<Int> vols;
        for (const Face& f : cone_faces(big)) vols.push_back(normalized_volume(big, f));
        std::sort(vols.begin(), vols.end());
        add("rank-11: face volumes 1,1,1,1,3,3,3,9",
            vols == std::vector<Int>{1, 1, 1, 1, 3, 3, 3, 9});
    }
    {
        auto mf = minface(big, beta0);
        bool ok = mf.size() == 3 && mf[0].members == std::vector<int>{0} &&
                  mf[1].members == std::vector<int>{3} && mf[2].members == std::vector<int>{8};
        add("rank-11: minface(beta0) = {1},{4},{9}", ok);
    }
    {
        auto r = rank_simplex(big, beta0);
        add("rank-11: rank(beta0) = 11 over volume 9",
            r.rank == 11 && r.volume == 9 && r.exceptional);
    }
    add("rank-11: beta0 is exceptional", is_exceptional(big, beta0).exceptional);
    {
        auto sweep = exceptional_sweep(big, 0, 6);
        add("rank-11: sweep [0,6] finds exactly beta0",
            sweep.size() == 1 && sweep[0] == RatVec{Rat(1), Rat(1), Rat(1)});
    }
    {
        auto cm = is_cohen_macaulay(big, 6);
        add("rank-11: semigroup ring is not Cohen-Macaulay with a witness",
            cm.status == CMStatus::NotCohenMacaulay && cm.witness.has_value());
    }
    {
        Parameter a1{Rat(1), Rat(0), Rat(0)};
        auto diff = fingerprint_diff(fingerprint(big, beta0), fingerprint(big, a1));
        add("rank-11: fingerprints of beta0 and a1 differ exactly at the empty face",
            diff.size() == 1 && diff[0].members.empty());
    }

    json r;
    r["checks"] = checks;
    r["all_pass"] = all;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for A-hypergeometric systems"};
    app.require_subcommand(0, 1);

    std::string input_path = "-";
    long budget_flag = -1;
    std::string order_flag, window_flag;
    bool verify_flag = false, perturb_flag = false;
    int threads_flag = -1;

    std::vector<std::string> command_names = {"triangulate", "faces",  "etau", "minface",
                                              "dim",         "rank",   "exceptional",
                                              "sweep",       "cm",     "series",
                                              "iso",         "verify"};
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : command_names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->fallthrough();  // global flags may follow the subcommand
        if (name != "verify")
            sub->add_option("problem", input_path, "problem file (JSON), '-' for stdin");
        subs[name] = sub;
    }
    app.add_flag("--verify", verify_flag, "cross-check results against the oracle module");
    app.add_flag("--perturb", perturb_flag, "refine non-generic weights symbolically");
    app.add_option("--budget", budget_flag, "enumeration budget");
    app.add_option("--order", order_flag, "series truncation order (w-weight)");
    app.add_option("--window", window_flag, "sweep window LO:HI");
    app.add_option("--threads", threads_flag, "worker cap for the parallel kernels (1 = serial)");

    CLI11_PARSE(app, argc, argv);
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 1;
    }
    std::string command = app.get_subcommands()[0]->get_name();

    try {
        json result;
        json doc;
        if (command == "verify") {
            doc = json::object();
            doc["command"] = "verify";
            result = cmd_verify();
        } else {
            std::string text;
            if (input_path == "-") {
                std::stringstream ss;
                ss << std::cin.rdbuf();
                text = ss.str();
            } else {
                std::ifstream in(input_path);
                if (!in) throw ParseError("cannot open " + input_path);
                std::stringstream ss;
                ss << in.rdbuf();
                text = ss.str();
            }
            json j;
            try {
                j = json::parse(text);
            } catch (const std::exception& e) {
                throw ParseError(std::string("invalid JSON: ") + e.what());
            }
            Problem p = parse_problem(j);
            if (budget_flag >= 0) p.budget = budget_flag;
            if (!order_flag.empty()) p.order = parse_rat(order_flag);
            if (!window_flag.empty()) {
                auto colon = window_flag.find(':');
                if (colon == std::string::npos) throw ParseError("--window expects LO:HI");
                p.window_lo = std::stoi(window_flag.substr(0, colon));
                p.window_hi = std::stoi(window_flag.substr(colon + 1));
            }
            if (perturb_flag) p.perturb = true;
            if (threads_flag >= 0) p.threads = threads_flag;
            set_max_threads(p.threads);

            Configuration cfg = make_configuration(p.a);
            doc = echo_input(p, command);
            if (command == "triangulate") result = cmd_triangulate(cfg, p, verify_flag);
            else if (command == "faces") result = cmd_faces(cfg);
            else if (command == "etau") result = cmd_etau(cfg, p, verify_flag);
            else if (command == "minface") result = cmd_minface(cfg, p);
            else if (command == "dim") result = cmd_dim(cfg, p, verify_flag);
            else if (command == "rank") result = cmd_rank(cfg, p, verify_flag);
            else if (command == "exceptional") result = cmd_exceptional(cfg, p);
            else if (command == "sweep") result = cmd_sweep(cfg, p);
            else if (command == "cm") result = cmd_cm(cfg, p);
            else if (command == "series") result = cmd_series(cfg, p, verify_flag);
            else if (command == "iso") result = cmd_iso(cfg, p);
        }
        doc["result"] = result;
        std::cout << doc.dump(2) << "\n";
        if (command == "verify" && !result.at("all_pass").get<bool>()) return 2;
        return 0;
    } catch (const ParseError& e) {
        json err{{"error", "ParseError"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        json err{{"error", "ParseError"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        json err{{"error", "BudgetExceeded"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 3;
    } catch (const InternalInconsistency& e) {
        json err{{"error", "InternalInconsistency"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 4;
    } catch (const Error& e) {
        // mathematical precondition failures: NotSimplex, NonGenericWeight, ...
        std::string kind = "MathPrecondition";
        if (dynamic_cast<const NotSimplex*>(&e)) kind = "NotSimplex";
        else if (dynamic_cast<const NonGenericWeight*>(&e)) kind = "NonGenericWeight";
        else if (dynamic_cast<const NotHomogeneous*>(&e)) kind = "NotHomogeneous";
        else if (dynamic_cast<const RankDeficient*>(&e)) kind = "RankDeficient";
        else if (dynamic_cast<const NotSublattice*>(&e)) kind = "NotSublattice";
        else if (dynamic_cast<const SpanMismatch*>(&e)) kind = "SpanMismatch";
        else if (dynamic_cast<const ZeroDenominator*>(&e)) kind = "ZeroDenominator";
        else if (dynamic_cast<const NoSingleCellWeight*>(&e)) kind = "NoSingleCellWeight";
        json err{{"error", kind}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
}
