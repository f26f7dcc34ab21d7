#include "lipeq/commands.hpp"

#include "lipeq/dimension.hpp"
#include "lipeq/errors.hpp"
#include "lipeq/signature.hpp"
#include "lipeq/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

namespace lipeq {

namespace {

const char* side_name(FreeSide side) {
    switch (side) {
        case FreeSide::LeftFree: return "left";
        case FreeSide::RightFree: return "right";
        default: return "both";
    }
}

Report indices_json(const std::vector<int>& idx) {
    Report out = Report::array();
    for (int i : idx) out.push_back(i + 1);
    return out;
}

Report violation_json(const ClassViolation& v) {
    Report out;
    out["condition"] = v.condition;
    out["detail"] = v.detail;
    out["indices"] = indices_json(v.indices);
    if (v.witness) {
        out["witness"] = Report::object();
        out["witness"]["lower"] = rational_entry(v.witness->lower[0]);
        out["witness"]["upper"] = rational_entry(v.witness->upper[0]);
    }
    return out;
}

Report certificate_json(const ClassCertificate& cert) {
    Report out;
    out["k_vector"] = cert.k_vector;
    Report overlaps = Report::array();
    for (const auto& o : cert.overlaps) {
        Report entry;
        entry["pair"] = {o.index + 1, o.index + 2};
        entry["exponent"] = o.exponent;
        overlaps.push_back(std::move(entry));
    }
    out["overlaps"] = std::move(overlaps);
    Report gamma = Report::array();
    for (const auto& level : cert.gamma) gamma.push_back(indices_json(level));
    out["gamma"] = std::move(gamma);
    out["gamma_rest"] = indices_json(cert.gamma_rest);
    out["gamma_counts"] = cert.gamma_counts();
    out["free_side"] = side_name(cert.side);
    return out;
}

Report box_json(const Box& b) {
    Report out;
    Report lower = Report::array(), upper = Report::array();
    for (const auto& q : b.lower) lower.push_back(rational_entry(q));
    for (const auto& q : b.upper) upper.push_back(rational_entry(q));
    out["lower"] = std::move(lower);
    out["upper"] = std::move(upper);
    return out;
}

Report pieces_json(const std::vector<PieceSpec>& pieces) {
    Report out = Report::array();
    for (const auto& p : pieces) {
        Report entry;
        entry["base"] = word_json(p.base);
        Report minus = Report::array();
        for (const auto& u : p.minus) minus.push_back(word_json(u));
        entry["minus"] = std::move(minus);
        out.push_back(std::move(entry));
    }
    return out;
}

Report edges_json(const GraphDirectedSystem& gds) {
    Report out = Report::array();
    for (const auto& e : gds.edges) {
        Report entry;
        entry["from"] = e.from + 1;
        entry["to"] = e.to + 1;
        entry["via"] = word_json(e.via);
        entry["exponent"] = e.ratio_exponent();
        out.push_back(std::move(entry));
    }
    return out;
}

Report verification_json(const VerificationResult& v) {
    Report out;
    out["depth"] = v.depth;
    if (v.equations.ok) {
        out["equations"] = "ok";
    } else {
        out["equations"] = "mismatch";
        Report w;
        w["vertex"] = v.equations.mismatch->vertex + 1;
        w["side"] = v.equations.mismatch->lhs_only ? "piece" : "union";
        w["box"] = box_json(v.equations.mismatch->box);
        out["equation_witness"] = std::move(w);
    }
    Report part;
    part["disjoint"] = v.partition.disjoint;
    part["complete"] = v.partition.complete;
    if (v.partition.overlap_pair) {
        part["overlap_pair"] = {v.partition.overlap_pair->first + 1,
                                v.partition.overlap_pair->second + 1};
    }
    out["partition"] = std::move(part);
    Report sep;
    if (v.separation.status == SeparationStatus::Certified) {
        sep["status"] = "certified";
        sep["min_gap_squared"] = rational_entry(v.separation.min_gap_squared);
        sep["min_gap_lower_bound"] = rational_entry(v.separation.min_gap_lower_bound);
    } else {
        sep["status"] = "unknown_at_depth";
        if (v.separation.witness) {
            sep["witness_a"] = box_json(v.separation.witness->first);
            sep["witness_b"] = box_json(v.separation.witness->second);
        }
    }
    out["separation"] = std::move(sep);
    return out;
}

Report spec_header(const SpecFile& spec) {
    Report out;
    out["lambda"] = rational_entry(spec.ifs.lambda());
    out["dim"] = spec.ifs.dim();
    out["maps"] = spec.ifs.map_count();
    return out;
}

int depth_or_default(int override_value, const SpecFile& spec) {
    return override_value > 0 ? override_value : spec.params.depth;
}

}  // namespace

Report rational_entry(const Rational& q) {
    Report out;
    out["rat"] = to_fraction_string(q);
    out["dec"] = to_decimal_string(q, 12);
    return out;
}

Report word_json(const MapWord& w) {
    Report out = Report::array();
    for (int i : w) out.push_back(i + 1);
    return out;
}

BuiltSystem build_system(const SpecFile& spec, int verify_depth) {
    if (spec.partition) {
        GraphDirectedSystem gds =
            build_custom_graph(spec.ifs, spec.partition->pieces, spec.partition->edges,
                               verify_depth);
        return BuiltSystem{spec.ifs, std::move(gds), spec.partition->pieces, "custom", false, {}};
    }
    if (spec.ifs.dim() != 1)
        throw SpecError(spec.origin + ": a 2D system needs an explicit partition");

    ClassCertificate cert = validate_or_throw(spec.ifs);
    if (cert.k_vector.empty()) {
        auto [gds, pieces] = build_full_shift(spec.ifs);
        return BuiltSystem{spec.ifs, std::move(gds), std::move(pieces), "full_shift", false,
                           std::move(cert)};
    }
    HomogeneousIFS normalized = normalize_right_free(spec.ifs, cert);
    bool reflected = cert.side == FreeSide::LeftFree;
    if (reflected) cert = validate_or_throw(normalized);
    auto [gds, pieces] = build_partition_graph(normalized, cert);
    return BuiltSystem{std::move(normalized), std::move(gds), std::move(pieces), "partition",
                       reflected, std::move(cert)};
}

CommandResult cmd_validate(const SpecFile& spec) {
    Report report;
    report["command"] = "validate";
    report["input"] = spec_header(spec);
    Report translations = Report::array();
    for (int i = 0; i < spec.ifs.map_count(); ++i) {
        Report coords = Report::array();
        for (const auto& q : spec.ifs.translation(i)) coords.push_back(rational_entry(q));
        translations.push_back(std::move(coords));
    }
    report["translations"] = std::move(translations);

    if (spec.ifs.dim() != 1) {
        report["status"] = "unsupported";
        report["detail"] = "class validation applies to 1D systems";
        return {std::move(report), kExitInput};
    }
    auto result = validate_class(spec.ifs);
    if (auto* violation = std::get_if<ClassViolation>(&result)) {
        report["status"] = "violation";
        report["violation"] = violation_json(*violation);
        return {std::move(report), kExitViolation};
    }
    report["status"] = "valid";
    report["class"] = certificate_json(std::get<ClassCertificate>(result));
    return {std::move(report), kExitOk};
}

CommandResult cmd_gamma(const SpecFile& spec) {
    Report report;
    report["command"] = "gamma";
    report["input"] = spec_header(spec);
    if (spec.ifs.dim() != 1) {
        report["status"] = "unsupported";
        report["detail"] = "gamma analysis applies to 1D systems";
        return {std::move(report), kExitInput};
    }
    auto result = validate_class(spec.ifs);
    if (auto* violation = std::get_if<ClassViolation>(&result)) {
        report["status"] = "violation";
        report["violation"] = violation_json(*violation);
        return {std::move(report), kExitViolation};
    }
    const auto& cert = std::get<ClassCertificate>(result);
    report["status"] = "valid";
    report["k_vector"] = cert.k_vector;
    Report gamma = Report::array();
    for (const auto& level : cert.gamma) gamma.push_back(indices_json(level));
    report["gamma"] = std::move(gamma);
    report["gamma_rest"] = indices_json(cert.gamma_rest);
    report["gamma_counts"] = gamma_signature(cert);
    report["free_side"] = side_name(cert.side);
    return {std::move(report), kExitOk};
}

CommandResult cmd_graph(const SpecFile& spec, int depth_override) {
    const int depth = depth_or_default(depth_override, spec);
    Report report;
    report["command"] = "graph";
    report["input"] = spec_header(spec);

    BuiltSystem built = [&] {
        if (spec.partition) {
            // Assemble without throwing so the mismatch lands in the report.
            GraphDirectedSystem gds =
                assemble_custom_graph(spec.ifs, spec.partition->pieces, spec.partition->edges);
            return BuiltSystem{spec.ifs, std::move(gds), spec.partition->pieces, "custom", false,
                               {}};
        }
        return build_system(spec, depth);
    }();

    report["source"] = built.source;
    report["reflected"] = built.reflected;
    report["vertices"] = built.gds.vertex_count;
    report["edges"] = static_cast<int>(built.gds.edges.size());
    std::vector<int> degrees;
    for (int v = 0; v < built.gds.vertex_count; ++v) degrees.push_back(built.gds.out_degree(v));
    report["out_degrees"] = degrees;
    report["pieces"] = pieces_json(built.pieces);
    report["edge_list"] = edges_json(built.gds);

    VerificationResult verification = verify_equations(built.ifs, built.gds, built.pieces, depth);
    report["verification"] = verification_json(verification);
    report["signature"] = canonical_signature(built.gds).encoding;

    return {std::move(report), verification.equations.ok ? kExitOk : kExitViolation};
}

namespace {

struct SamplingRun {
    Report json;
    int violations = 0;
};

SamplingRun run_sampling(const BuiltSystem& a, const BuiltSystem& b,
                         const std::vector<int>& vertex_map, const BilipCertificate& cert,
                         const SpecFile& spec_a, const SpecFile& spec_b,
                         const EquivOptions& options) {
    int word_depth = options.word_depth > 0
                         ? options.word_depth
                         : std::max(spec_a.params.word_depth, spec_b.params.word_depth);
    int pairs = options.pairs >= 0 ? options.pairs
                                   : std::max(spec_a.params.pairs, spec_b.params.pairs);
    std::uint64_t seed = options.seed ? *options.seed : spec_a.params.seed;

    DistortionReport rep = sample_bilip_check(a.ifs, a.gds, a.pieces, b.ifs, b.gds, b.pieces,
                                              vertex_map, cert, pairs, word_depth, seed);
    Report out;
    out["pairs"] = rep.pairs_checked;
    out["word_depth"] = word_depth;
    out["seed"] = seed;
    out["violations"] = rep.violations;
    out["max_observed_ratio"] = rep.max_ratio;
    return {std::move(out), rep.violations};
}

Report bilip_json(const BilipCertificate& cert) {
    Report out;
    out["c_star"] = rational_entry(cert.c_star);
    out["c_upper"] = rational_entry(cert.c_upper);
    out["c"] = rational_entry(cert.c);
    out["depth"] = cert.depth_used;
    return out;
}

CommandResult equiv_inconclusive(Report report, const std::string& reason) {
    report["status"] = "Inconclusive";
    report["reason"] = reason;
    return {std::move(report), kExitInconclusive};
}

}  // namespace

CommandResult cmd_equiv(const SpecFile& a, const SpecFile& b, const EquivOptions& options) {
    Report report;
    report["command"] = "equiv";
    report["input_a"] = spec_header(a);
    report["input_b"] = spec_header(b);

    const bool class_mode = !a.partition && !b.partition;
    report["mode"] = class_mode ? "class" : "custom";

    if (class_mode) {
        if (a.ifs.dim() != 1 || b.ifs.dim() != 1) {
            report["status"] = "error";
            report["detail"] = "class mode needs 1D systems";
            return {std::move(report), kExitInput};
        }
        // Violations surface here with exit 2 (handled by the caller's
        // ClassViolationError handler if thrown); check both explicitly so
        // the report names the failing side.
        auto ra = validate_class(a.ifs);
        if (auto* v = std::get_if<ClassViolation>(&ra)) {
            report["status"] = "violation";
            report["violating_input"] = "a";
            report["violation"] = violation_json(*v);
            return {std::move(report), kExitViolation};
        }
        auto rb = validate_class(b.ifs);
        if (auto* v = std::get_if<ClassViolation>(&rb)) {
            report["status"] = "violation";
            report["violating_input"] = "b";
            report["violation"] = violation_json(*v);
            return {std::move(report), kExitViolation};
        }
        ClassCertificate cert_a = std::get<ClassCertificate>(std::move(ra));
        ClassCertificate cert_b = std::get<ClassCertificate>(std::move(rb));
        report["gamma_counts_a"] = cert_a.gamma_counts();
        report["gamma_counts_b"] = cert_b.gamma_counts();
        report["k_vector_a"] = cert_a.k_vector;
        report["k_vector_b"] = cert_b.k_vector;

        if (a.ifs.lambda() != b.ifs.lambda())
            return equiv_inconclusive(std::move(report), "contraction ratios differ");
        if (a.ifs.map_count() != b.ifs.map_count())
            return equiv_inconclusive(std::move(report), "map counts differ");
        if (cert_a.k_vector != cert_b.k_vector)
            return equiv_inconclusive(std::move(report), "overlap exponent vectors differ");
        if (cert_a.gamma_counts() != cert_b.gamma_counts())
            return equiv_inconclusive(std::move(report), "overlap counts per level differ");

        // Same counts: the two partition graphs are structurally identical,
        // vertex for vertex, and the systems are equivalent.
        BuiltSystem built_a = build_system(a, a.params.depth);
        BuiltSystem built_b = build_system(b, b.params.depth);
        report["reflected_a"] = built_a.reflected;
        report["reflected_b"] = built_b.reflected;
        report["vertices"] = built_a.gds.vertex_count;

        std::vector<int> identity(built_a.gds.vertex_count);
        for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
        report["status"] = "Equivalent";
        try {
            BilipCertificate cert = bilip_constants(built_a.ifs, built_a.gds, built_a.pieces,
                                                    built_b.ifs, built_b.gds, built_b.pieces,
                                                    std::max(a.params.depth, b.params.depth));
            report["bilip"] = bilip_json(cert);
            SamplingRun run = run_sampling(built_a, built_b, identity, cert, a, b, options);
            report["sampling"] = std::move(run.json);
        } catch (const NotSeparated& e) {
            report["bilip"] = Report{{"status", "separation_unknown"}, {"detail", e.what()}};
        }
        return {std::move(report), kExitOk};
    }

    // Custom mode: graphs by each side's own route, compared by signature.
    if (a.ifs.lambda() != b.ifs.lambda())
        return equiv_inconclusive(std::move(report), "contraction ratios differ");

    BuiltSystem built_a = build_system(a, a.params.depth);
    BuiltSystem built_b = build_system(b, b.params.depth);
    report["source_a"] = built_a.source;
    report["source_b"] = built_b.source;
    report["vertices_a"] = built_a.gds.vertex_count;
    report["vertices_b"] = built_b.gds.vertex_count;

    auto iso = find_isomorphism(built_a.gds, built_b.gds);
    report["signature_match"] = iso.has_value();
    if (!iso)
        return equiv_inconclusive(std::move(report), "canonical signatures differ");
    report["vertex_map"] = indices_json(*iso);

    try {
        BilipCertificate cert = bilip_constants(built_a.ifs, built_a.gds, built_a.pieces,
                                                built_b.ifs, built_b.gds, built_b.pieces,
                                                std::max(a.params.depth, b.params.depth));
        report["bilip"] = bilip_json(cert);
        SamplingRun run = run_sampling(built_a, built_b, *iso, cert, a, b, options);
        report["sampling"] = std::move(run.json);
    } catch (const NotSeparated& e) {
        return equiv_inconclusive(std::move(report),
                                  std::string("separation not certified: ") + e.what());
    }
    report["status"] = "Equivalent";
    return {std::move(report), kExitOk};
}

CommandResult cmd_dim(const SpecFile& spec, const DimOptions& options) {
    Report report;
    report["command"] = "dim";
    report["input"] = spec_header(spec);

    long long cap = 10000000;
    if (options.cap) {
        cap = *options.cap;
    } else if (const char* env = std::getenv("LIPEQ_CAP")) {
        cap = std::atoll(env);
        if (cap <= 0) cap = 10000000;
    }

    BuiltSystem built = build_system(spec, spec.params.depth);
    report["source"] = built.source;
    VerificationResult verification = verify_equations(built.ifs, built.gds, built.pieces,
                                                       spec.params.depth);

    Report spectral;
    if (verification.separation.status == SeparationStatus::Certified) {
        SpectralResult s = spectral_radius(count_matrix(built.gds), options.tol);
        spectral["status"] = "ok";
        spectral["rho"] = s.rho;
        spectral["iterations"] = s.iterations;
        spectral["primitive"] = s.primitive;
        spectral["dim"] = hausdorff_dim(built.gds, verification.separation, options.tol);
    } else {
        spectral["status"] = "separation_unknown";
        spectral["depth"] = verification.depth;
    }
    report["spectral"] = std::move(spectral);

    BoxCountResult boxes = box_count_dim(spec.ifs, options.box_depth, cap);
    Report box;
    box["depth"] = options.box_depth;
    box["cap"] = cap;
    box["counts"] = boxes.counts;
    box["slope"] = boxes.slope;
    report["box_count"] = std::move(box);

    if (report["spectral"].contains("dim")) {
        double d = report["spectral"]["dim"].get<double>();
        report["agreement"] = std::abs(d - boxes.slope);
    }
    return {std::move(report), kExitOk};
}

CommandResult cmd_render(const SpecFile& a, const SpecFile* b, const std::string& out_path) {
    std::string svg = render_svg(a, b);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw SpecError(out_path + ": cannot open for writing");
    out << svg;
    out.close();
    Report report;
    report["command"] = "render";
    report["output"] = out_path;
    report["bytes"] = svg.size();
    return {std::move(report), kExitOk};
}

}  // namespace lipeq
