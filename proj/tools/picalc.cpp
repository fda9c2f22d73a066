// picalc: command line front end of the process-calculus workbench.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "picalc/encode.hpp"
#include "picalc/equiv.hpp"
#include "picalc/fixtures.hpp"
#include "picalc/parse.hpp"

using namespace picalc;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_ccs_file(const std::string& path) { return path.size() > 4 && path.substr(path.size() - 4) == ".ccs"; }

Mode parse_mode(const std::string& m) { return m == "strict" ? Mode::Strict : Mode::Im; }

// A parsed input of either calculus.
struct Input {
    bool ccs = false;
    PiProgram pi;
    CcsProgram cc;
};

Input load(const std::string& path, Mode mode, const std::string& defs_path) {
    Input in;
    std::string defs = defs_path.empty() ? std::string() : read_file(defs_path);
    std::string text = read_file(path);
    in.ccs = is_ccs_file(path);
    if (in.ccs)
        in.cc = parse_ccs(text, defs);
    else
        in.pi = parse_pi(text, mode, defs);
    return in;
}

void print_defs(const DefEnv& env) {
    for (const auto& [key, def] : env.pi) {
        std::string head = def.ident;
        if (!def.params.empty()) {
            head += "(";
            for (std::size_t i = 0; i < def.params.size(); ++i)
                head += (i ? "," : "") + def.params[i].str();
            head += ")";
        }
        std::cout << head << " := " << print(def.body) << "\n";
    }
    for (const auto& [ident, body] : env.ccs)
        std::cout << ident << " := " << print(body) << "\n";
}

NameSet parse_pool(const std::string& text) {
    NameSet pool;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            pool.insert(parse_name(item));
    return pool;
}

void write_out(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write " + path);
    out << content;
}

ExploreLimits limits_with_depth(std::size_t depth) {
    ExploreLimits l = ExploreLimits::from_env();
    l.max_depth = depth;
    return l;
}

void print_graph(const TransitionGraph& g) {
    for (std::size_t s = 0; s < g.size(); ++s) {
        std::cout << "s" << s << "  " << g.keys[s];
        if (!g.barbs[s].empty()) {
            std::cout << "  barbs {";
            bool first = true;
            for (const auto& b : g.barbs[s]) {
                std::cout << (first ? "" : ",") << b.str();
                first = false;
            }
            std::cout << "}";
        }
        if (!g.expanded[s])
            std::cout << "  (unexplored)";
        std::cout << "\n";
        for (const auto& [label, t] : g.edges[s])
            std::cout << "    --" << label << "--> s" << t << "\n";
    }
    std::cout << g.size() << " states, " << g.edge_count() << " transitions, "
              << (g.complete ? "complete" : "incomplete") << "\n";
}

json to_json(const GameResult& r, const std::string& equiv) {
    json w = json::array();
    for (const auto& st : r.witness) {
        json step{{"side", st.side == 0 ? "left" : "right"}, {"label", st.label}, {"from", st.from}, {"to", st.to}};
        step["response"] = st.response ? json(*st.response) : json(nullptr);
        w.push_back(std::move(step));
    }
    return json{{"verdict", r.verdict_str()}, {"exact", r.exact()},     {"depth", r.depth},
                {"states", r.states},         {"witness", std::move(w)}, {"reason", r.reason},
                {"equiv", equiv}};
}

// ---- subcommands

struct Common {
    std::string file;
    std::string mode = "im";
    std::string defs;
};

int cmd_parse(const Common& c) {
    try {
        Input in = load(c.file, parse_mode(c.mode), c.defs);
        std::cout << (in.ccs ? print(in.cc.term) : print(in.pi.term)) << "\n";
        print_defs(in.ccs ? in.cc.env : in.pi.env);
        return kPass;
    } catch (const SyntaxError& e) {
        std::cerr << c.file << ":" << e.what() << "\n";
        return kFail;
    } catch (const SemanticsError& e) {
        std::cerr << c.file << ": " << e.what() << "\n";
        return kFail;
    }
}

int cmd_translate(const Common& c, const std::string& encoder) {
    Input in = load(c.file, parse_mode(c.mode), c.defs);
    if (in.ccs)
        throw UsageError("translate expects a π input");
    if (encoder == "E") {
        std::cout << print(translate_E(in.pi.term)) << "\n";
        return kPass;
    }
    Translation t = translate_T(in.pi.term, in.pi.env, parse_mode(c.mode));
    std::cout << print(t.term) << "\n";
    for (const auto& [ident, body] : t.env.ccs)
        std::cout << ident << " := " << print(body) << "\n";
    return kPass;
}

int cmd_lts(const Common& c, const std::string& semantics, const std::string& pool_text, std::size_t depth,
            const std::string& dot) {
    Input in = load(c.file, parse_mode(c.mode), c.defs);
    ExploreLimits limits = limits_with_depth(depth);
    TransitionGraph g;
    bool wants_ccs = semantics == "ccs" || semantics == "ccs-gamma";
    if (in.ccs && !wants_ccs)
        throw UsageError("a CCS input needs --semantics ccs or ccs-gamma");
    if (in.ccs || wants_ccs) {
        Ccs term = in.cc.term;
        DefEnv env = in.cc.env;
        if (!in.ccs) {
            Translation t = translate_T(in.pi.term, in.pi.env, parse_mode(c.mode));
            term = t.term;
            env = t.env;
        }
        NameSet pool = pool_text.empty() ? reachable_names(term, env) : parse_pool(pool_text);
        if (pool_text.empty())
            pool.insert(fresh_name(pool));
        g = explore_lts_ccs(term, env, pool, limits).graph;
    } else {
        static const std::map<std::string, PiSemantics> sems{{"late", PiSemantics::Late},
                                                              {"early", PiSemantics::Early},
                                                              {"late-sym", PiSemantics::LateSymbolic},
                                                              {"early-sym", PiSemantics::EarlySymbolic}};
        NameSet pool = pool_text.empty() ? default_pool(in.pi.term) : parse_pool(pool_text);
        g = explore_lts_pi(in.pi.term, in.pi.env, sems.at(semantics), pool, limits).graph;
    }
    if (!dot.empty())
        write_out(dot, to_dot(g, c.file));
    if (dot != "-")
        print_graph(g);
    return kPass;
}

int cmd_check(const Common& c, const std::string& against, const std::string& equiv, std::size_t depth,
              const std::string& json_out, bool expect_fail, const std::string& pool_text, bool concrete) {
    // CCS_γ labels keep their match sequences, so the symbolic π semantics is the default.
    PiSemantics pi_sem = concrete ? PiSemantics::Early : PiSemantics::EarlySymbolic;
    Mode mode = parse_mode(c.mode);
    ExploreLimits limits = limits_with_depth(depth);
    Input left = load(c.file, mode, c.defs);

    // Each side as a BTS, and lazily as an LTS over a shared pool.
    struct Side {
        bool ccs = false;
        Pi pi;
        Ccs cc;
        DefEnv env;
    };
    auto side_of = [](const Input& in) {
        Side s;
        s.ccs = in.ccs;
        s.pi = in.pi.term;
        s.cc = in.cc.term;
        s.env = in.ccs ? in.cc.env : in.pi.env;
        return s;
    };
    Side l = side_of(left);
    Side r;
    if (against == "translation-T" || against == "translation-E") {
        if (left.ccs)
            throw UsageError("translations apply to π inputs");
        r.ccs = true;
        if (against == "translation-T") {
            Translation t = translate_T(left.pi.term, left.pi.env, mode);
            r.cc = t.term;
            r.env = t.env;
        } else {
            r.cc = translate_E(left.pi.term);
        }
    } else {
        r = side_of(load(against, mode, c.defs));
    }

    GameResult result;
    if (equiv == "strong") {
        NameSet pool;
        if (!pool_text.empty()) {
            pool = parse_pool(pool_text);
        } else {
            for (const Side* s : {&l, &r}) {
                NameSet n = s->ccs ? reachable_names(s->cc, s->env) : all_names(s->pi);
                for (const auto& x : n)
                    if (x.is_plain())
                        pool.insert(x);
            }
            pool.insert(fresh_name(pool));
        }
        auto lts = [&](const Side& s) {
            return s.ccs ? explore_lts_ccs(s.cc, s.env, pool, limits).graph
                         : explore_lts_pi(s.pi, s.env, pi_sem, pool, limits).graph;
        };
        result = check_strong_bisim(lts(l), lts(r));
    } else {
        auto bts = [&](const Side& s) {
            return s.ccs ? explore_bts_ccs(s.cc, s.env, limits).graph : explore_bts_pi(s.pi, s.env, limits).graph;
        };
        Bts b1 = bts(l), b2 = bts(r);
        result = equiv == "barbed" ? check_barbed_bisim(b1, b2) : check_reduction_bisim(b1, b2);
    }

    bool ok = result.holds() != expect_fail;
    std::cout << (ok ? "PASS" : "FAIL") << " " << equiv << ": " << result.verdict_str();
    if (result.verdict == Verdict::Bisimilar)
        std::cout << " (exact)";
    else if (result.verdict == Verdict::BisimilarToDepth)
        std::cout << " (to depth " << result.depth << ")";
    std::cout << ", " << result.states << " states\n";
    for (std::size_t i = 0; i < result.witness.size(); ++i) {
        const auto& st = result.witness[i];
        std::cout << "  " << i + 1 << ". " << (st.side == 0 ? "left " : "right ") << st.from << " --" << st.label
                  << "--> " << st.to << "\n     answered by " << (st.response ? *st.response : "nothing") << "\n";
    }
    if (!result.reason.empty())
        std::cout << "  " << result.reason << "\n";
    if (!json_out.empty())
        write_out(json_out, to_json(result, equiv).dump(2) + "\n");
    return ok ? kPass : kFail;
}

int cmd_replay(const std::string& fixture, bool all, unsigned jobs, std::size_t k) {
    std::vector<std::string> ids;
    if (all)
        ids = fixture_ids();
    else if (!fixture.empty())
        ids.push_back(fixture);
    else
        throw UsageError("replay needs --fixture ID or --all");
    for (const auto& id : ids)
        if (std::find(fixture_ids().begin(), fixture_ids().end(), id) == fixture_ids().end())
            throw UsageError("unknown fixture " + id);

    std::vector<FixtureReport> reports(ids.size());
    std::vector<std::string> errors(ids.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < ids.size();) {
            try {
                reports[i] = run_fixture(ids[i], FixtureOptions{k});
            } catch (const std::exception& e) {
                reports[i].id = ids[i];
                reports[i].pass = false;
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < std::max(1u, jobs); ++j)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    bool ok = true;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto& r = reports[i];
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << (r.title.empty() ? "" : ": " + r.title) << "\n";
        for (const auto& line : r.lines)
            std::cout << "  " << line << "\n";
        if (!errors[i].empty())
            std::cout << "  error: " << errors[i] << "\n";
        ok = ok && r.pass;
    }
    return ok ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"picalc: π-calculus and CCS_γ semantics, translations and equivalence checks"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", common.file, "input term (.ccs for CCS, anything else for π)")->required();
        sub->add_option("--mode", common.mode, "π dialect")->check(CLI::IsMember({"strict", "im"}));
        sub->add_option("--defs", common.defs, "file with agent definitions");
    };

    auto* parse = app.add_subcommand("parse", "parse and print canonically");
    add_common(parse);

    std::string encoder = "T";
    auto* translate = app.add_subcommand("translate", "translate a π term into CCS");
    add_common(translate);
    translate->add_option("--encoder", encoder)->check(CLI::IsMember({"T", "E"}));

    std::string semantics = "early";
    std::string pool;
    std::size_t depth = 64;
    std::string dot;
    auto* lts = app.add_subcommand("lts", "explore the transition system");
    add_common(lts);
    lts->add_option("--semantics", semantics)
        ->check(CLI::IsMember({"late", "early", "late-sym", "early-sym", "ccs", "ccs-gamma"}));
    lts->add_option("--pool", pool, "comma-separated names for input objects");
    lts->add_option("--depth", depth, "exploration depth bound");
    lts->add_option("--dot", dot, "write GraphViz to this file (- for stdout)");

    std::string against = "translation-T";
    std::string equiv = "barbed";
    std::string json_out;
    bool expect_fail = false;
    auto* check = app.add_subcommand("check", "decide an equivalence");
    add_common(check);
    check->add_option("--against", against, "translation-T, translation-E or a second file");
    check->add_option("--equiv", equiv)->check(CLI::IsMember({"barbed", "reduction", "strong"}));
    check->add_option("--depth", depth, "exploration depth bound");
    check->add_option("--json", json_out, "write a JSON report (- for stdout)");
    check->add_option("--pool", pool, "input objects for --equiv strong");
    bool concrete = false;
    check->add_flag("--concrete", concrete, "use the non-symbolic early π semantics for --equiv strong");
    check->add_flag("--expect-fail", expect_fail, "succeed exactly when the equivalence fails");

    std::string fixture;
    bool all = false;
    unsigned jobs = 1;
    std::size_t k = 10;
    auto* replay = app.add_subcommand("replay", "replay the built-in fixtures");
    replay->add_option("--fixture", fixture);
    replay->add_flag("--all", all);
    replay->add_option("--jobs", jobs);
    replay->add_option("--k", k, "probe depth for ccs-barbs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*parse)
            return cmd_parse(common);
        if (*translate)
            return cmd_translate(common, encoder);
        if (*lts)
            return cmd_lts(common, semantics, pool, depth, dot);
        if (*check)
            return cmd_check(common, against, equiv, depth, json_out, expect_fail, pool, concrete);
        if (*replay)
            return cmd_replay(fixture, all, jobs, k);
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const SemanticsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
