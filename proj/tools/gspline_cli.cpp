#include "gspline/error.hpp"
#include "gspline/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace gspline;

namespace {

constexpr int kComputationFailed = 1;
constexpr int kInputError = 2;

std::vector<std::size_t> parse_list(const std::string& text, const char* flag)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorKind::Parse, std::string(flag) + ": '" + item + "' is not a nonnegative integer");
        out.push_back(std::stoul(item));
    }
    return out;
}

void print(const Json& j)
{
    std::cout << j.dump(2) << "\n";
}

void log_steps(const ReductionResult& r)
{
    std::cerr << "genus " << genus(r.original) << ", " << r.original.vertex_count() << " vertices, "
              << r.original.edge_count() << " edges\n";
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const ReductionStep& s = r.steps[i];
        std::cerr << "step " << i + 1 << ": " << to_string(s.kind) << " at vertex " << s.base << ", edges";
        for (auto e : s.edges)
            std::cerr << " " << e;
        std::cerr << " -> " << s.after.vertex_count() << " vertices, " << s.after.edge_count() << " edges";
        if (s.newEdge)
            std::cerr << ", new edge " << *s.newEdge << " labeled " << s.after.label_of(*s.newEdge).to_string();
        std::cerr << "\n";
    }
    std::cerr << "reduced graph: " << to_string(r.classification.shape) << "\n";
}

int cmd_spline_basis(const std::string& file, const std::string& based)
{
    GraphDocument doc = parse_graph_document(read_json_file(file));
    SplineModule m = based.empty() ? compute_spline_module(doc.graph)
                                   : based_spline_module(doc.graph, parse_list(based, "--based"));
    print(module_to_json(m));
    return 0;
}

int cmd_reduce(const std::string& file, bool verbose)
{
    GraphDocument doc = parse_graph_document(read_json_file(file));
    ReductionResult r = reduce_graph(doc.graph);
    if (verbose)
        log_steps(r);
    print(reduction_to_json(r));
    return 0;
}

int cmd_decompose(const std::string& file, bool verbose)
{
    GraphDocument doc = parse_graph_document(read_json_file(file));
    SplineDecomposition d = spline_decomposition(doc.graph);
    if (verbose) {
        log_steps(d.reduction);
        std::cerr << "reduced module size " << d.reducedModule.size();
        for (const auto& p : d.kernelParts)
            std::cerr << " + " << p.module.size();
        std::cerr << " = " << d.totalSize << (d.additive ? "" : " (NOT additive)") << "\n";
    }
    print(decomposition_to_json(d));
    return d.additive && d.kernelsVanish && d.generates ? 0 : kComputationFailed;
}

struct HdArgs {
    std::string ring;
    std::string ideals;
    std::size_t maxPairs = 0;
    std::string mode;
    std::string guess;
    std::size_t pairsCap = 8;
    std::size_t guessCap = 12;
    std::size_t samples = 24;
};

int cmd_hd(const HdArgs& a)
{
    RingSpec ring = parse_ring_string(a.ring);
    Json ideals_json;
    try {
        ideals_json = Json::parse(a.ideals);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("--ideals: ") + e.what());
    }
    std::vector<Ideal> labels = parse_ideals(ring, ideals_json);
    SeriesMode mode;
    if (a.mode == "dim")
        mode = SeriesMode::FieldDimension;
    else if (a.mode == "zrank")
        mode = SeriesMode::ZRank;
    else
        throw Error(ErrorKind::Parse, "--mode must be dim or zrank");
    if (a.maxPairs > a.pairsCap)
        throw Error(ErrorKind::Shape, "--max-pairs " + std::to_string(a.maxPairs) + " exceeds the cap " +
                                          std::to_string(a.pairsCap) + " (raise --pairs-cap)");
    HilbertDyckOptions options;
    options.samplesPerDegree = a.samples;

    if (a.guess.empty()) {
        print(prefix_to_json(hilbert_dyck_prefix(ring, labels, a.maxPairs, mode, options)));
        return 0;
    }
    auto degs = parse_list(a.guess, "--guess");
    if (degs.size() != 2)
        throw Error(ErrorKind::Parse, "--guess expects dx,dt");
    // The relation needs more terms than a short prefix provides; extend up to the guess cap.
    std::size_t needed = required_prefix_length(degs[0], degs[1]) - 1;
    std::size_t guess_pairs = std::max(a.maxPairs, needed);
    if (guess_pairs > std::max(a.guessCap, a.maxPairs))
        throw Error(ErrorKind::PrefixTooShort, "--guess " + a.guess + " needs " + std::to_string(needed) +
                                                   " pairs, above --guess-cap " + std::to_string(a.guessCap));
    SeriesPrefix full = hilbert_dyck_prefix(ring, labels, guess_pairs, mode, options);
    SeriesPrefix shown{mode, std::vector<Integer>(full.coefficients.begin(),
                                                  full.coefficients.begin() + static_cast<long>(a.maxPairs) + 1)};
    Json out = prefix_to_json(shown);
    out["guessPrefix"] = prefix_to_json(full)["coefficients"];
    auto rel = guess_algebraic_relation(full, degs[0], degs[1]);
    if (!rel) {
        out["relation"] = nullptr;
        print(out);
        std::cerr << "no relation with x-degree <= " << degs[0] << " and t-degree <= " << degs[1] << "\n";
        return kComputationFailed;
    }
    bool ok = verify_relation(*rel, full);
    out["relation"] = relation_to_json(*rel);
    out["verifiedModulo"] = "t^" + std::to_string(full.coefficients.size());
    out["verified"] = ok;
    print(out);
    return ok ? 0 : kComputationFailed;
}

int cmd_verify(const std::string& file, const std::string& corpus)
{
    if (!file.empty() == !corpus.empty())
        throw Error(ErrorKind::Parse, "verify takes either FILE or --corpus DIR");
    if (!file.empty()) {
        GraphDocument doc = parse_graph_document(read_json_file(file));
        GraphReport r = verify_graph(doc.graph, file);
        print(report_to_json(r));
        return r.passed() ? 0 : kComputationFailed;
    }
    VerifyReport r = verify_corpus(corpus);
    if (r.empty())
        std::cerr << "warning: no checks were run on " << corpus << "\n";
    for (const auto& g : r.graphs)
        if (!g.passed())
            std::cerr << "FAIL " << g.name << (g.loadError ? ": " + *g.loadError : "") << "\n";
    print(report_to_json(r));
    return r.passed() ? 0 : kComputationFailed;
}

int cmd_gen_corpus(const std::string& dir)
{
    std::size_t n = write_corpus(dir);
    std::cerr << "wrote " << n << " graphs to " << dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generalized splines on edge-labeled graphs"};
    app.require_subcommand(1);
    std::string seed;
    app.add_option("--seed", seed, "Reserved; all computations are deterministic");

    std::string file, based, corpus;
    bool verbose = false;

    auto* basis = app.add_subcommand("spline-basis", "Generators and structure of the spline module");
    basis->add_option("file", file, "Graph document")->required();
    basis->add_option("--based", based, "Comma-separated vertices where splines vanish");

    auto* reduce = app.add_subcommand("reduce", "Genus reduction to a loop, figure-eight, or theta");
    reduce->add_option("file", file, "Graph document")->required();
    reduce->add_flag("--verbose", verbose, "Step log on stderr");

    auto* decompose = app.add_subcommand("decompose", "Spline module of the reduced graph plus kernel parts");
    decompose->add_option("file", file, "Graph document")->required();
    decompose->add_flag("--verbose", verbose, "Step log on stderr");

    HdArgs hd_args;
    auto* hd = app.add_subcommand("hd", "Hilbert-Dyck series prefix over labeled plane trees");
    hd->add_option("--ring", hd_args.ring, "Z, ZmodN:n, Fp:p, TruncPoly:Fp:p:vars:deg or TruncPoly:Q:vars:deg")
        ->required();
    hd->add_option("--ideals", hd_args.ideals, "JSON list of generator lists, e.g. [[]] or [[2],[]]")->required();
    hd->add_option("--max-pairs", hd_args.maxPairs, "Largest tree size")->required();
    hd->add_option("--mode", hd_args.mode, "dim or zrank")->required();
    hd->add_option("--guess", hd_args.guess, "dx,dt: search an algebraic relation of these degrees");
    hd->add_option("--pairs-cap", hd_args.pairsCap, "Limit on --max-pairs")->capture_default_str();
    hd->add_option("--guess-cap", hd_args.guessCap, "Limit on the prefix computed for --guess")->capture_default_str();
    hd->add_option("--samples", hd_args.samples, "Words per size recomputed by the generic solver")
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Run the invariant suites on a graph or a corpus");
    verify->add_option("file", file, "Graph document");
    verify->add_option("--corpus", corpus, "Directory of graph documents");

    auto* gen = app.add_subcommand("gen-corpus", "Write the regression corpus");
    gen->add_option("dir", file, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*basis)
            return cmd_spline_basis(file, based);
        if (*reduce)
            return cmd_reduce(file, verbose);
        if (*decompose)
            return cmd_decompose(file, verbose);
        if (*hd)
            return cmd_hd(hd_args);
        if (*verify)
            return cmd_verify(file, corpus);
        if (*gen)
            return cmd_gen_corpus(file);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::logic_error& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kComputationFailed;
    }
    return kInputError;
}
