#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "curvelab/complexes.hpp"
#include "curvelab/consistency.hpp"
#include "curvelab/curve_sample.hpp"
#include "curvelab/decomposition.hpp"
#include "curvelab/embedding.hpp"
#include "curvelab/error.hpp"
#include "curvelab/eta.hpp"
#include "curvelab/graph.hpp"
#include "curvelab/grid_oracle.hpp"
#include "curvelab/raag.hpp"
#include "curvelab/store.hpp"

using namespace curvelab;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kNothingFound = 2;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

Graph resolve_graph(const std::string& name_or_file) {
    if (auto g = catalog_graph(name_or_file)) return *g;
    std::ifstream f(name_or_file);
    if (!f) throw InvalidInput("'" + name_or_file + "' is neither a catalog graph nor a readable file");
    try {
        return graph_from_json(json::parse(f));
    } catch (const json::parse_error& e) {
        throw InvalidInput(name_or_file + ": " + e.what());
    }
}

Graph resolve_graph_json(const json& j) {
    if (j.is_string()) return resolve_graph(j.get<std::string>());
    return graph_from_json(j);
}

Hom load_hom(const std::string& path) { return hom_from_json(read_json_file(path), resolve_graph_json); }

std::vector<bool> ef_variants(const std::string& ef) {
    if (ef == "true") return {true};
    if (ef == "false") return {false};
    if (ef == "both") return {false, true};
    throw InvalidInput("--ef must be true, false or both");
}

std::string variant_name(bool ef) { return ef ? "gamma1 (e-f edge)" : "gamma1 (no e-f edge)"; }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

// graphs

int graphs_catalog(const std::string& name, const std::string& format) {
    if (name.empty()) {
        for (const auto& n : catalog_names()) std::cout << n << "\n";
        return kOk;
    }
    const Graph g = resolve_graph(name);
    if (format == "dot")
        std::cout << to_dot(g, name);
    else
        std::cout << to_json(g).dump(2) << "\n";
    return kOk;
}

int graphs_embed(const std::string& pattern_name, const std::string& host_name, std::size_t limit, unsigned threads) {
    const Graph pattern = resolve_graph(pattern_name);
    const Graph host = resolve_graph(host_name);
    EmbeddingOptions o;
    o.limit = limit;
    o.threads = threads;
    const auto found = induced_embeddings(pattern, host, o);
    json out = json::array();
    for (const auto& e : found) {
        if (!is_induced_embedding(pattern, host, e)) throw Error("search returned a non-induced map");
        json m = json::object();
        for (std::size_t i = 0; i < e.image.size(); ++i) m[pattern.label(i)] = host.label(e.image[i]);
        out.push_back(m);
    }
    std::cout << out.dump(2) << "\n";
    std::cerr << found.size() << " embedding(s) of " << pattern_name << " in " << host_name << "\n";
    return found.empty() ? kNothingFound : kOk;
}

int graphs_thick_stars(const std::string& name, int n) {
    const Graph g = resolve_graph(name);
    std::cout << (has_thick_stars(g, n) ? "true" : "false") << "\n";
    return kOk;
}

int graphs_eta(const std::string& name, bool use_facts) {
    const Graph g = resolve_graph(name);
    const EtaBound b = eta_lower_bound_detail(g, use_facts ? default_eta_facts() : EtaFacts{});
    json out{{"graph", name},
             {"eta_lower_bound", b.value},
             {"peeled_universal_vertices", b.peeled},
             {"core_vertices", b.core.size()},
             {"core_anti_connected", b.core_anti_connected}};
    if (b.fact_used) out["fact_used"] = *b.fact_used;
    std::cout << out.dump(2) << "\n";
    return kOk;
}

int graphs_consistency(const std::string& ef) {
    bool all = true;
    for (bool v : ef_variants(ef)) {
        const ConsistencyReport r = consistency_suite(gamma0(), gamma1(v));
        std::cout << variant_name(v) << ": " << r.passed_count() << "/" << r.checks.size() << " checks passed\n";
        for (const auto& c : r.checks)
            std::cout << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : ": ")
                      << c.detail << "\n";
        all = all && r.all_passed();
    }
    return all ? kOk : kFailure;
}

// raag

int raag_normalize(const std::string& graph, const std::string& word) {
    const Raag a(resolve_graph(graph));
    const Word nf = a.normal_form(a.parse(word));
    std::cout << (nf.empty() ? "1" : a.format(nf)) << "\n";
    return kOk;
}

int raag_check_hom(const std::string& path) {
    Hom h = load_hom(path);
    const std::size_t relators = h.source().graph().edge_count();
    if (!check_hom(h)) {
        std::cout << "check-hom: FAILED, some of the " << relators << " relators do not map to the identity\n";
        return kFailure;
    }
    std::cout << "check-hom: ok, all " << relators << " relators map to the identity\n";
    return kOk;
}

int raag_ball(const std::string& graph, int radius, const std::string& out_path) {
    const Raag a(resolve_graph(graph));
    const Ball b = enumerate_ball(a, radius);
    std::cout << "ball radius " << radius << ": " << b.elements.size() << " elements\n";
    std::cout << "sphere sizes:";
    for (auto s : b.sphere_sizes) std::cout << " " << s;
    std::cout << "\n";
    if (!out_path.empty()) {
        std::ostringstream s;
        for (const auto& w : b.elements) s << (w.empty() ? "1" : a.format(w)) << "\n";
        write_text(out_path, s.str());
    }
    return kOk;
}

int raag_kernel_ball(const std::string& path, int radius) {
    Hom h = load_hom(path);
    if (!check_hom(h)) {
        std::cout << "kernel-ball: hom failed check-hom; refusing to apply it\n";
        return kFailure;
    }
    const Ball b = enumerate_ball(h.source(), radius);
    const auto violations = kernel_ball_check(h, radius);
    std::cout << "kernel-ball radius " << radius << ": ball size " << b.elements.size() << ", " << violations.size()
              << " violations\n";
    for (std::size_t i = 0; i < violations.size() && i < 20; ++i) std::cout << "  " << h.source().format(violations[i]) << "\n";
    return violations.empty() ? kOk : kFailure;
}

// curves

struct CurveArgs {
    std::string surface = "0,7";
    RunConfig config;
    bool no_cache = false;
};

void apply_surface(CurveArgs& a) {
    const auto comma = a.surface.find(',');
    if (comma == std::string::npos) throw InvalidInput("--surface expects g,n");
    try {
        a.config.genus = std::stoi(a.surface.substr(0, comma));
        a.config.punctures = std::stoi(a.surface.substr(comma + 1));
    } catch (const std::exception&) {
        throw InvalidInput("--surface expects g,n");
    }
}

CachedSample sample_for(CurveArgs& a) {
    apply_surface(a);
    Timer t;
    auto s = load_or_enumerate(a.config, !a.no_cache);
    std::cerr << "sample " << s.sample.model().name() << ": " << s.sample.size() << " classes ("
              << (s.from_cache ? "cache" : "enumerated") << ", " << t.seconds() << " s, key " << s.key.substr(0, 12)
              << ")\n";
    return s;
}

int curves_enumerate(CurveArgs& a, const std::string& out_path) {
    const auto s = sample_for(a);
    std::size_t zero = 0;
    for (std::size_t i = 0; i < s.sample.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) zero += s.sample.at(i, j) == 0 ? 1 : 0;
    std::cout << "surface " << s.sample.model().name() << "\n"
              << "classes " << s.sample.size() << "\n"
              << "disjoint pairs " << zero << "\n"
              << "key " << s.key << "\n"
              << "content hash " << sample_content_hash(s.sample) << "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw Error("cannot write " + out_path);
        write_sample(f, s.sample);
    }
    return kOk;
}

int curves_graph(CurveArgs& a, const std::string& format, const std::string& out_path) {
    const auto s = sample_for(a);
    const Graph g = curve_graph(s.sample);
    std::string text;
    if (format == "dot") {
        text = to_dot(g, "curves");
    } else {
        json j = to_json(g);
        json words = json::array();
        for (const auto& c : s.sample.classes()) words.push_back(s.sample.model().format(c.word()));
        j["curves"] = words;
        text = j.dump() + "\n";
    }
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
    std::cerr << "graph: " << g.size() << " vertices, " << g.edge_count() << " edges, clique number "
              << clique_number(g) << "\n";
    return kOk;
}

int curves_find(CurveArgs& a, const std::string& pattern_name, std::size_t limit) {
    const auto s = sample_for(a);
    const Graph host = curve_graph(s.sample);
    std::vector<std::pair<std::string, Graph>> patterns;
    if (pattern_name == "gamma1") {
        for (bool v : ef_variants(a.config.ef)) patterns.emplace_back(variant_name(v), gamma1(v));
    } else {
        patterns.emplace_back(pattern_name, resolve_graph(pattern_name));
    }
    const SurfaceModel& m = s.sample.model();
    bool any = false;
    for (const auto& [name, pattern] : patterns) {
        Timer t;
        EmbeddingOptions o;
        o.limit = limit;
        o.threads = a.config.threads;
        const auto found = induced_embeddings(pattern, host, o);
        std::cerr << name << ": search took " << t.seconds() << " s\n";
        if (found.empty()) {
            std::cout << name << ": none found\n";
            continue;
        }
        any = true;
        for (const auto& e : found) {
            if (!is_induced_embedding(pattern, host, e)) throw Error("search returned a non-induced map");
            std::cout << name << ": found\n";
            for (std::size_t i = 0; i < e.image.size(); ++i)
                std::cout << "  " << pattern.label(i) << " = " << m.format(s.sample.classes()[e.image[i]].word()) << "\n";
            std::cout << "  intersections:";
            for (std::size_t i = 0; i < e.image.size(); ++i)
                for (std::size_t j = i + 1; j < e.image.size(); ++j)
                    std::cout << " " << pattern.label(i) << pattern.label(j) << "=" << s.sample.at(e.image[i], e.image[j]);
            std::cout << "\n";
        }
    }
    return any ? kOk : kNothingFound;
}

int curves_oracle(CurveArgs& a, const std::vector<std::string>& words, std::size_t maxlen) {
    apply_surface(a);
    const SurfaceModel m = surface_model(a.config.genus, a.config.punctures);
    GridOracle oracle(m);
    if (!words.empty()) {
        if (words.size() != 2) throw InvalidInput("oracle takes two curve words or none");
        const CurveClass c1 = canonical_class(m, m.parse(words[0])), c2 = canonical_class(m, m.parse(words[1]));
        const auto g = oracle.stabilized(c1, c2);
        const bool simple = is_simple(m, c1) && is_simple(m, c2);
        std::cout << "combinatorial " << (simple ? std::to_string(geometric_intersection(m, c1, c2)) : "n/a (non-simple)")
                  << "\n";
        std::cout << "grid " << (g.value ? std::to_string(*g.value) : "inconclusive") << "\n";
        for (auto [size, v] : g.trace) std::cout << "  size " << size << ": " << (v ? std::to_string(*v) : "-") << "\n";
        return g.value && simple && *g.value == geometric_intersection(m, c1, c2) ? kOk : kFailure;
    }
    const auto classes = simple_classes_up_to(m, maxlen);
    std::size_t pairs = 0, mismatches = 0, inconclusive = 0;
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            ++pairs;
            const auto g = oracle.stabilized(classes[i], classes[j]);
            const int c = geometric_intersection(m, classes[i], classes[j]);
            if (!g.value) {
                ++inconclusive;
                std::cout << "inconclusive: " << m.format(classes[i].word()) << " , " << m.format(classes[j].word()) << "\n";
            } else if (*g.value != c) {
                ++mismatches;
                std::cout << "mismatch: " << m.format(classes[i].word()) << " , " << m.format(classes[j].word())
                          << " combinatorial " << c << " grid " << *g.value << "\n";
            }
        }
    std::cout << m.name() << ": " << classes.size() << " simple classes of length <= " << maxlen << ", " << pairs
              << " pairs, " << mismatches << " mismatches, " << inconclusive << " inconclusive\n";
    return mismatches == 0 && inconclusive == 0 ? kOk : kFailure;
}

// complexes and decompositions

int complexes_check(const std::string& which, int n) {
    std::vector<CorpusEntry> entries;
    if (which.empty() || which == "corpus") {
        entries = complex_corpus();
    } else {
        bool named = false;
        for (auto& e : complex_corpus())
            if (e.name == which) {
                entries.push_back(e);
                named = true;
            }
        if (!named) {
            if (n < 1) throw InvalidInput("--n is required for a complex file");
            entries.push_back({which, complex_from_json(read_json_file(which)), n});
        }
    }
    for (const auto& e : entries) {
        const int size = n > 0 ? n : e.n;
        const PropositionReport r = check_proposition(e.complex, size);
        std::cout << e.name << " (N=" << size << "): ";
        if (!r.preconditions_hold()) {
            std::cout << "preconditions fail";
            for (const auto& v : r.violations) std::cout << "; " << v;
            std::cout << "\n";
        } else {
            std::cout << "thick stars " << (r.thick_stars ? "yes" : "no") << ", links with >= N+1 facets "
                      << (r.large_links ? "yes" : "no") << " (min " << r.min_link_facets << "), "
                      << (r.equivalent() ? "equivalent" : "NOT equivalent") << "\n";
        }
        std::cout << "  proper: codim-1 reading " << (r.proper_codim_one ? "yes" : "no") << ", any-face reading "
                  << (r.proper_any_face ? "yes" : "no") << "\n";
    }
    return kOk;
}

int decomp_run(int xi, const std::string& format) {
    const auto ds = enumerate_decompositions(xi);
    const CaseReport r = match_cases(ds);
    if (format == "json")
        std::cout << to_json(r).dump(2) << "\n";
    else
        std::cout << table(r) << (r.exact() ? "exactly cases (i)-(v)\n" : "cases do not match (i)-(v)\n");
    return r.exact() ? kOk : kFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvelab: curve graphs, right-angled Artin groups and induced subgraph search"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    // graphs
    auto* graphs = app.add_subcommand("graphs", "graph catalog, embeddings and predicates");
    graphs->require_subcommand(1);
    std::string g_name, g_format = "json", g_host, g_ef = "both";
    std::size_t g_limit = 1;
    int g_n = 0;
    bool g_no_facts = false;
    auto* catalog = graphs->add_subcommand("catalog", "list catalog graphs or print one");
    catalog->add_option("name", g_name);
    catalog->add_option("--format", g_format)->check(CLI::IsMember({"json", "dot"}));
    auto* embed = graphs->add_subcommand("embed", "induced embeddings of a pattern in a host");
    embed->add_option("pattern", g_name)->required();
    embed->add_option("host", g_host)->required();
    embed->add_option("--limit", g_limit, "stop after this many (0 = all)");
    auto* thick = graphs->add_subcommand("thick-stars", "N-thick star predicate");
    thick->add_option("graph", g_name)->required();
    thick->add_option("N", g_n)->required()->check(CLI::PositiveNumber);
    auto* eta = graphs->add_subcommand("eta", "lower bound for eta");
    eta->add_option("graph", g_name)->required();
    eta->add_flag("--no-facts", g_no_facts, "ignore registered facts");
    auto* consistency = graphs->add_subcommand("consistency", "gamma0 / gamma1 cross-checks");
    consistency->add_option("--ef", g_ef)->check(CLI::IsMember({"true", "false", "both"}));

    // raag
    auto* raag = app.add_subcommand("raag", "right-angled Artin groups");
    raag->require_subcommand(1);
    std::string r_graph, r_word, r_hom, r_out;
    int r_radius = 4;
    auto* normalize = raag->add_subcommand("normalize", "normal form of a word");
    normalize->add_option("graph", r_graph)->required();
    normalize->add_option("word", r_word)->required();
    auto* check = raag->add_subcommand("check-hom", "verify a homomorphism on all relators");
    check->add_option("hom", r_hom)->required()->check(CLI::ExistingFile);
    auto* ball = raag->add_subcommand("ball", "ball of normal forms");
    ball->add_option("graph", r_graph)->required();
    ball->add_option("--radius", r_radius)->check(CLI::NonNegativeNumber);
    ball->add_option("--out", r_out, "write sorted elements here");
    auto* kball = raag->add_subcommand("kernel-ball", "injectivity of a hom on a ball");
    kball->add_option("hom", r_hom)->required()->check(CLI::ExistingFile);
    kball->add_option("--radius", r_radius)->check(CLI::NonNegativeNumber);

    // curves
    auto* curves = app.add_subcommand("curves", "curve samples on punctured surfaces");
    curves->require_subcommand(1);
    CurveArgs ca;
    std::string c_out, c_format = "json", c_pattern;
    std::size_t c_limit = 1, c_oracle_len = 6;
    std::vector<std::string> c_words;
    auto add_sample_options = [&](CLI::App* sub) {
        sub->add_option("--surface", ca.surface, "genus,punctures");
        sub->add_option("--depth", ca.config.depth)->check(CLI::NonNegativeNumber);
        sub->add_option("--maxlen", ca.config.maxlen)->check(CLI::PositiveNumber);
        sub->add_option("--seeds", ca.config.seeds_file)->check(CLI::ExistingFile);
        sub->add_option("--generators", ca.config.generators_file)->check(CLI::ExistingFile);
        sub->add_option("--cache-dir", ca.config.cache_dir, std::string("default: $") + kCacheDirEnv);
        sub->add_flag("--no-cache", ca.no_cache);
    };
    auto* enumerate = curves->add_subcommand("enumerate", "enumerate a sample");
    add_sample_options(enumerate);
    enumerate->add_option("--out", c_out, "also write the sample file here");
    auto* cgraph = curves->add_subcommand("graph", "disjointness graph of a sample");
    add_sample_options(cgraph);
    cgraph->add_option("--format", c_format)->check(CLI::IsMember({"json", "dot"}));
    cgraph->add_option("--out", c_out);
    auto* find = curves->add_subcommand("find", "induced copy of a catalog graph in a sample");
    add_sample_options(find);
    find->add_option("pattern", c_pattern)->required();
    find->add_option("--ef", ca.config.ef)->check(CLI::IsMember({"true", "false", "both"}));
    find->add_option("--limit", c_limit);
    auto* oracle = curves->add_subcommand("oracle", "grid cross-check of intersection numbers");
    oracle->add_option("--surface", ca.surface, "genus,punctures");
    oracle->add_option("--maxlen", c_oracle_len)->check(CLI::PositiveNumber);
    oracle->add_option("words", c_words, "two curve words; all simple pairs when omitted");

    // complexes and decompositions
    auto* complexes = app.add_subcommand("complexes", "triangulation criterion");
    complexes->require_subcommand(1);
    std::string k_which;
    int k_n = 0;
    auto* kcheck = complexes->add_subcommand("check", "check a corpus entry, a complex file, or the corpus");
    kcheck->add_option("complex", k_which);
    kcheck->add_option("--n", k_n);
    auto* decomp = app.add_subcommand("decomp", "surface decompositions of a given complexity");
    int d_xi = 4;
    std::string d_format = "table";
    decomp->add_option("--xi", d_xi);
    decomp->add_option("--format", d_format)->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kFailure;
    }

    ca.config.threads = threads;
    ca.config.radius = r_radius;
    try {
        if (catalog->parsed()) return graphs_catalog(g_name, g_format);
        if (embed->parsed()) return graphs_embed(g_name, g_host, g_limit, threads);
        if (thick->parsed()) return graphs_thick_stars(g_name, g_n);
        if (eta->parsed()) return graphs_eta(g_name, !g_no_facts);
        if (consistency->parsed()) return graphs_consistency(g_ef);
        if (normalize->parsed()) return raag_normalize(r_graph, r_word);
        if (check->parsed()) return raag_check_hom(r_hom);
        if (ball->parsed()) return raag_ball(r_graph, r_radius, r_out);
        if (kball->parsed()) return raag_kernel_ball(r_hom, r_radius);
        if (enumerate->parsed()) return curves_enumerate(ca, c_out);
        if (cgraph->parsed()) return curves_graph(ca, c_format, c_out);
        if (find->parsed()) return curves_find(ca, c_pattern, c_limit);
        if (oracle->parsed()) return curves_oracle(ca, c_words, c_oracle_len);
        if (kcheck->parsed()) return complexes_check(k_which, k_n);
        if (decomp->parsed()) return decomp_run(d_xi, d_format);
    } catch (const CacheCorruption& e) {
        std::cerr << "cache corruption: " << e.what() << "\n";
        return kFailure;
    } catch (const UnverifiedHom& e) {
        std::cerr << "unverified homomorphism: " << e.what() << "\n";
        return kFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
