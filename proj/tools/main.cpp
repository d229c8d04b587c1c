// Command-line front end: reproducible pipelines from generators and CSV
// inputs through transformations, MDS embeddings, the distance-based
// discriminant, and matrix checks. Exit codes: 0 ok, 2 usage or I/O,
// 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schoenberg/schoenberg.hpp"

namespace {

using namespace schoenberg;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct CommonOptions {
    std::string input;
    bool matrix_input = false;
    bool check_cnd = false;
    bool mahalanobis = false;
    std::string transform_spec = "identity";
    std::string origin_spec = "uniform";
    std::string weights_spec = "uniform";
    double tol = kEigenRelTol;
    std::uint64_t seed = 0;
};

SignedDistribution parse_origin(const std::string& spec, std::size_t n) {
    if (spec == "uniform") return SignedDistribution::uniform(n);
    if (spec.rfind("point-mass:", 0) == 0) {
        const std::string index = spec.substr(11);
        std::size_t consumed = 0;
        long k = 0;
        try {
            k = std::stol(index, &consumed);
        } catch (const std::exception&) {
            consumed = 0;
        }
        if (consumed != index.size() || k < 1 || static_cast<std::size_t>(k) > n)
            throw ParseError("origin 'point-mass:" + index + "': index must be in 1.." +
                             std::to_string(n));
        return SignedDistribution::point_mass(n, static_cast<std::size_t>(k - 1));
    }
    return SignedDistribution(csv::load_vector(spec));
}

WeightDistribution parse_weights(const std::string& spec, std::size_t n) {
    if (spec == "uniform") return WeightDistribution::uniform(n);
    return WeightDistribution(csv::load_vector(spec));
}

PointCloud load_input_cloud(const CommonOptions& opt) {
    PointCloud cloud = csv::load_cloud(opt.input);
    if (opt.mahalanobis) cloud = mahalanobis_standardize(cloud);
    return cloud;
}

// Distance matrix from either a cloud CSV or a raw matrix CSV, plus the
// labels when the cloud carries them.
std::pair<SquaredDistanceMatrix, std::optional<GroupLabels>> load_distances(
    const CommonOptions& opt) {
    if (opt.matrix_input) {
        const Matrix m = csv::load_matrix(opt.input);
        return {SquaredDistanceMatrix::from_raw(m, opt.check_cnd, opt.tol), std::nullopt};
    }
    const PointCloud cloud = load_input_cloud(opt);
    return {squared_distances(cloud), cloud.labels};
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    const auto number = [](const std::string& s) {
        std::size_t consumed = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &consumed);
        } catch (const std::exception&) {
            consumed = 0;
        }
        if (consumed != s.size() || s.empty())
            throw ParseError("grid: invalid number '" + s + "'");
        return v;
    };
    if (spec.find(':') != std::string::npos) {
        const std::size_t c1 = spec.find(':');
        const std::size_t c2 = spec.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw ParseError("grid '" + spec + "': expected start:stop:step");
        const double start = number(spec.substr(0, c1));
        const double stop = number(spec.substr(c1 + 1, c2 - c1 - 1));
        const double step = number(spec.substr(c2 + 1));
        if (step <= 0.0 || stop < start)
            throw ParseError("grid '" + spec + "': need stop >= start and step > 0");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
        for (std::size_t i = 0; i <= count; ++i) grid.push_back(start + static_cast<double>(i) * step);
        return grid;
    }
    std::size_t begin = 0;
    while (begin <= spec.size()) {
        const std::size_t comma = spec.find(',', begin);
        const std::string tok =
            spec.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
        grid.push_back(number(tok));
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    return grid;
}

int cmd_generate(const std::string& kind, int side, double spacing, int n, int per_group,
                 std::uint64_t seed, const std::string& out) {
    PointCloud cloud = [&] {
        if (kind == "grid") return generate_grid(side, spacing);
        if (kind == "rod") return generate_rod(n, seed);
        if (kind == "circles") return generate_circles(per_group, seed);
        throw ParseError("unknown generator kind '" + kind + "'");
    }();
    csv::write_cloud(out, cloud);
    std::printf("wrote %zu points (%s) to %s\n", cloud.point_count(),
                cloud.provenance.c_str(), out.c_str());
    return kExitOk;
}

int cmd_embed(const CommonOptions& opt, const std::string& out, const std::string& scree_out,
              std::size_t dims, std::size_t top) {
    auto [d, labels] = load_distances(opt);
    const SchoenbergTransform t = parse_transform(opt.transform_spec);
    const SquaredDistanceMatrix transformed = apply(t, d);

    const std::size_t n = d.order();
    const SignedDistribution origin = parse_origin(opt.origin_spec, n);
    const WeightDistribution weights = parse_weights(opt.weights_spec, n);
    const Embedding e = weighted_mds(transformed, weights, origin, opt.tol);
    const std::vector<double> proportions = reconstruction_proportions(e);

    const Embedding out_embedding = (dims > 0 && dims < e.dimension()) ? truncate(e, dims) : e;
    csv::write_embedding(out, out_embedding.coordinates);
    csv::write_scree(scree_out, e.eigenvalues, proportions);

    const std::size_t k = std::min<std::size_t>(top, proportions.size());
    std::printf("embedded %zu points in %zu dimensions (%zu written)\n", n, e.dimension(),
                out_embedding.dimension());
    double cumulative = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        cumulative += proportions[i];
        std::printf("proportion %zu: %.4f (cumulative %.4f)\n", i + 1, proportions[i],
                    cumulative);
    }
    return kExitOk;
}

int cmd_discriminate(const CommonOptions& opt, const std::string& out) {
    auto [d, labels] = load_distances(opt);
    if (!labels)
        throw ParseError("discriminate needs a labeled point cloud (trailing `label` column)");
    const SchoenbergTransform t = parse_transform(opt.transform_spec);
    const ClassificationResult result = classify(d, *labels, t);
    csv::write_assignments(out, *labels, result.assignments);
    const auto correct =
        static_cast<long>(std::lround(result.accuracy * static_cast<double>(labels->size())));
    std::printf("accuracy: %.6f (%ld/%zu, transform %s)\n", result.accuracy, correct,
                labels->size(), t.spec_string().c_str());
    return kExitOk;
}

int cmd_sweep(const CommonOptions& opt, const std::string& family, const std::string& grid_spec,
              const std::string& out) {
    auto [d, labels] = load_distances(opt);
    if (!labels)
        throw ParseError("sweep needs a labeled point cloud (trailing `label` column)");
    const SweepFamily fam = [&] {
        if (family == "power") return SweepFamily::power;
        if (family == "log") return SweepFamily::log;
        if (family == "gaussian") return SweepFamily::gaussian;
        throw ParseError("unknown sweep family '" + family + "'");
    }();
    const std::vector<double> grid = parse_grid(grid_spec);
    const SweepResult result = parameter_sweep(d, *labels, fam, grid);
    csv::write_sweep(out, result);

    std::size_t best = 0;
    for (std::size_t i = 1; i < result.accuracies.size(); ++i)
        if (result.accuracies[i] > result.accuracies[best]) best = i;
    std::printf("swept %zu %s parameters; best accuracy %.6f at a=%g\n", grid.size(),
                family.c_str(), result.accuracies[best], result.parameters[best]);
    return kExitOk;
}

int cmd_check(const std::string& input, double tol, bool divisible) {
    const Matrix raw = csv::load_matrix(input);
    const SymmetricMatrix m = SymmetricMatrix::checked(raw);

    const EigenSystem plain = decompose(m);
    std::printf("p.d.: %s (min eigenvalue %g)\n",
                is_pd(m, tol) ? "yes" : "no", plain.eigenvalues.back());

    const EigenSystem centered = decompose(detail::uniform_double_centering(m));
    std::printf("c.n.d.: %s (min centered eigenvalue %g)\n",
                is_cnd(m, tol) ? "yes" : "no", centered.eigenvalues.back());

    if (divisible) {
        for (std::size_t i = 0; i < m.order(); ++i)
            for (std::size_t j = i; j < m.order(); ++j)
                if (m(i, j) <= 0.0)
                    throw Error("divisibility sweep undefined: entry (" +
                                std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                ") is not positive");
        bool all = true;
        for (double power : {0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
            SymmetricMatrix hadamard(m.order());
            for (std::size_t i = 0; i < m.order(); ++i)
                for (std::size_t j = i; j < m.order(); ++j)
                    hadamard.set(i, j, std::pow(m(i, j), power));
            const bool ok = is_pd(hadamard, tol);
            all = all && ok;
            std::printf("hadamard power %.2f: p.d. %s\n", power, ok ? "yes" : "no");
        }
        std::printf("infinitely divisible (sampled): %s\n", all ? "yes" : "no");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schoenberg transformations of squared Euclidean distances: generators, "
                 "MDS embeddings, distance-based discriminant, matrix checks"};
    app.require_subcommand(1);

    CommonOptions opt;

    auto* generate = app.add_subcommand("generate", "write a synthetic point cloud CSV");
    std::string kind;
    int side = 10, rod_n = 1000, per_group = 50;
    double spacing = 1.0;
    std::string gen_out;
    generate->add_option("--kind", kind, "grid | rod | circles")->required();
    generate->add_option("--side", side, "grid: points per side (default 10)");
    generate->add_option("--spacing", spacing, "grid: lattice spacing (default 1)");
    generate->add_option("--n", rod_n, "rod: point count (default 1000)");
    generate->add_option("--per-group", per_group, "circles: points per circle (default 50)");
    generate->add_option("--seed", opt.seed, "random seed (default 0)");
    generate->add_option("--out", gen_out, "output CSV (default <kind>.csv)");

    const auto add_common = [&](CLI::App* cmd, bool with_transform) {
        cmd->add_option("input", opt.input, "point cloud CSV (or distance matrix with --matrix)")
            ->required();
        cmd->add_flag("--matrix", opt.matrix_input,
                      "input is a square headerless distance matrix CSV");
        cmd->add_flag("--check-cnd", opt.check_cnd,
                      "validate the c.n.d. property of an ingested matrix (costs an "
                      "eigendecomposition)");
        cmd->add_flag("--mahalanobis", opt.mahalanobis,
                      "standardize cloud coordinates before computing distances");
        cmd->add_option("--tol", opt.tol, "relative eigenvalue tolerance (default 1e-9)");
        if (with_transform)
            cmd->add_option("--transform", opt.transform_spec,
                            "transform spec, e.g. gaussian:a=0.65 (default identity)");
    };

    auto* embed = app.add_subcommand("embed", "MDS embedding with scree output");
    add_common(embed, true);
    std::string embed_out = "embedding.csv", scree_out = "scree.csv";
    std::size_t dims = 0, top = 4;
    embed->add_option("--origin", opt.origin_spec,
                      "origin: uniform | point-mass:k (1-based) | CSV of a signed "
                      "distribution (default uniform)");
    embed->add_option("--weights", opt.weights_spec,
                      "object weights: uniform | CSV of positive weights (default uniform)");
    embed->add_option("--dims", dims, "write only the leading dims coordinates");
    embed->add_option("--top", top, "how many proportions to print (default 4)");
    embed->add_option("--out", embed_out, "embedding CSV (default embedding.csv)");
    embed->add_option("--scree", scree_out, "scree CSV (default scree.csv)");

    auto* discriminate =
        app.add_subcommand("discriminate", "nearest-centroid classification accuracy");
    add_common(discriminate, true);
    std::string disc_out = "assignments.csv";
    discriminate->add_option("--out", disc_out, "assignments CSV (default assignments.csv)");

    auto* sweep = app.add_subcommand("sweep", "classification accuracy along a parameter grid");
    add_common(sweep, false);
    std::string family, grid_spec, sweep_out = "sweep.csv";
    sweep->add_option("--family", family, "power | log | gaussian")->required();
    sweep->add_option("--grid", grid_spec, "start:stop:step or comma-separated values")
        ->required();
    sweep->add_option("--out", sweep_out, "sweep CSV (default sweep.csv)");

    auto* check = app.add_subcommand("check", "p.d. / c.n.d. verdicts for a matrix CSV");
    std::string check_input;
    bool divisible = false;
    check->add_option("input", check_input, "square headerless matrix CSV")->required();
    check->add_option("--tol", opt.tol, "relative eigenvalue tolerance (default 1e-9)");
    check->add_flag("--divisible", divisible, "sample Hadamard powers for infinite divisibility");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (generate->parsed()) {
            if (gen_out.empty()) gen_out = kind + ".csv";
            return cmd_generate(kind, side, spacing, rod_n, per_group, opt.seed, gen_out);
        }
        if (embed->parsed()) return cmd_embed(opt, embed_out, scree_out, dims, top);
        if (discriminate->parsed()) return cmd_discriminate(opt, disc_out);
        if (sweep->parsed()) return cmd_sweep(opt, family, grid_spec, sweep_out);
        if (check->parsed()) return cmd_check(check_input, opt.tol, divisible);
    } catch (const NotEuclideanError& e) {
        std::fprintf(stderr, "error: numeric: %s\n", e.what());
        return kExitNumeric;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "error: numeric: %s\n", e.what());
        return kExitNumeric;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: parse: %s\n", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: io: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: usage: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
