#include <gtest/gtest.h>

#include "nres/report/session.hpp"

using namespace nres;

namespace {

std::string validation_message(const std::string& yaml)
{
    try {
        (void)load_config_text(yaml);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ValidationError);
        return e.what();
    }
    ADD_FAILURE() << "accepted: " << yaml;
    return "";
}

const Record& find(const Report& r, const std::string& quantity)
{
    for (const auto& rec : r.records)
        if (rec.quantity == quantity)
            return rec;
    throw std::runtime_error("missing record " + quantity);
}

} // namespace

TEST(Config, MinimalConfigGetsDefaults)
{
    const SessionConfig cfg = load_config_text("dim: 2\n");
    EXPECT_EQ(cfg.nbar, 2);
    EXPECT_EQ(cfg.n(), 4);
    EXPECT_EQ(cfg.mode, Mode::Oracle);
    EXPECT_EQ(cfg.case_label, "all");
    EXPECT_EQ(cfg.format, "text");
    EXPECT_TRUE(cfg.params.empty());
    EXPECT_EQ(cfg.selected_quantities(), all_quantities());
    EXPECT_EQ(cfg.selected_cases().size(), 5u);
    EXPECT_EQ(load_config_text("n: 6\n").nbar, 4);
}

TEST(Config, ValidationNamesTheField)
{
    EXPECT_NE(validation_message("dim: 4\ntorsion:\n  - {triple: [2, 1, 3], value: 1}\n").find("NonIncreasingTriple"),
              std::string::npos);
    EXPECT_NE(validation_message("dim: 3\n").find("OddBarDimension"), std::string::npos);
    EXPECT_NE(validation_message("n: 5\n").find("OddDimension"), std::string::npos);
    EXPECT_NE(validation_message("dim: 12\n").find("UnsupportedDimension"), std::string::npos);
    EXPECT_NE(validation_message("mode: oracle\n").find("dim"), std::string::npos);
    EXPECT_NE(validation_message("dim: 4\ntorsion:\n  - {triple: [1, 2, 3]}\n  - {triple: [1, 2, 3]}\n")
                  .find("duplicate triple"),
              std::string::npos);
    EXPECT_NE(validation_message("dim: 4\ntorsion:\n  - {triple: [1, 2, 9]}\n").find("IndexOutOfRange"),
              std::string::npos);
    EXPECT_NE(validation_message("dim: 4\nX: [1, 2]\n").find("X:"), std::string::npos);
    EXPECT_NE(validation_message("dim: 4\nparams: {s: 0.5}\n").find("params.s"), std::string::npos);
    EXPECT_NE(validation_message("dim: 4\nparams: {nope: 1}\n").find("params.nope"), std::string::npos);
    EXPECT_NE(validation_message("dim: 4\ncase: d\n").find("case"), std::string::npos);
    EXPECT_NE(validation_message("dim: 4\ncolour: red\n").find("colour"), std::string::npos);
}

TEST(Config, ParseErrorCarriesPosition)
{
    try {
        (void)load_config_text("dim: 4\nparams: {s: 1\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("line "), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("column "), std::string::npos);
    }
}

TEST(Config, HashTracksContent)
{
    const SessionConfig a = load_config_text("dim: 4\nseed: 3\n");
    const SessionConfig b = load_config_text("seed: 3\ndim: 4\n");
    const SessionConfig c = load_config_text("dim: 4\nseed: 4\n");
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_NE(config_hash(a), config_hash(c));
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(PolyParser, ReadsCanonicalRenderings)
{
    const Alphabet a = make_alphabet(6);
    auto v = [&](const char* s) { return ParamPoly::variable(a, s); };
    const ParamPoly p = v("h'(0)") * GaussRational::ratio(-5, 2) +
                        v("X_1").pow(2) * (GaussRational::ratio(1, 2) + GaussRational::ratio(3, 4) * GaussRational::i()) -
                        v("Y_2") * v("trPhi") * GaussRational::i() + GaussRational(3) +
                        v("dX_1_2") * (GaussRational::ratio(3, 4) * GaussRational::i());
    EXPECT_EQ(parse_param_poly(p.str(), a), p);
    EXPECT_EQ(parse_param_poly("-5/2*h'(0)", a), v("h'(0)") * GaussRational::ratio(-5, 2));
    EXPECT_EQ(parse_param_poly("0", a), ParamPoly(a, GaussRational()));
    EXPECT_THROW((void)parse_param_poly("2*zeta", a), Error);
    EXPECT_THROW((void)parse_param_poly("2*", a), Error);
}

TEST(Session, ExtrinsicCurvatureOnly)
{
    const Report r = run_session(load_config_text("dim: 4\nquantities: [extrinsic_K]\n"));
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.records[0].quantity, "extrinsic_K");
    EXPECT_EQ(r.records[0].value, "-5/2*h'(0)");
    EXPECT_EQ(r.records[0].agreement, "match");
    const std::string csv = emit_csv(r);
    EXPECT_NE(csv.find("\r\nextrinsic_K,-5/2*h'(0),extrinsic-curvature,match,"), std::string::npos);
}

TEST(Session, TraceLemmaTable)
{
    const Report r = run_session(load_config_text("dim: 2\nverify_lemmas: 50\nquantities: [trace_lemmas]\n"));
    ASSERT_EQ(r.records.size(), 8u);
    for (const auto& rec : r.records) {
        EXPECT_EQ(rec.details.at("trials"), "50");
        EXPECT_EQ(rec.details.at("dim"), "4");
        EXPECT_TRUE(rec.agreement == "pass" || rec.agreement == "printed_mismatch") << rec.quantity;
    }
    EXPECT_EQ(find(r, "trace_lemmas.trace_torsion_squared").value, "-1");
    EXPECT_EQ(find(r, "trace_lemmas.contraction_first_second").agreement, "pass");
}

TEST(Session, FlatUndecoratedDataGivesZeroDensities)
{
    const std::string yaml = "dim: 4\n"
                             "params: {s: 0, divX: 0, \"h'(0)\": 0, trPhi: 0, trPhi2: 0}\n"
                             "X: [0, 0, 0, 0, 0, 0]\nY: [0, 0, 0, 0, 0, 0]\ntorsion: []\n";
    const Report r = run_session(load_config_text(yaml));
    for (const char* q : {"interior_density", "interior_wres", "boundary_case.a-I", "boundary_case.a-II",
                          "boundary_case.a-III", "boundary_case.b", "boundary_case.c", "total_boundary_phi",
                          "wres_with_boundary.interior"})
        EXPECT_EQ(find(r, q).value, "0") << q;
}

TEST(Session, NumericSubstitution)
{
    const Report r = run_session(load_config_text(
        "dim: 4\ncase: b\nquantities: [boundary_cases]\nparams: {dimF: 1, trPhi: 1, Vol: 1, \"h'(0)\": 8}\n"
        "X: [0, 0, 0, 0, 0, 4]\nY: [0, 0, 0, 0, 0, symbolic]\n"));
    ASSERT_EQ(r.records.size(), 1u);
    // -15/8*8 - 1/4*4 + Y_6
    EXPECT_EQ(r.records[0].value, "-16+Y_6");
    EXPECT_FALSE(r.records[0].trace.empty());
}

TEST(Session, ErrorsBecomeRecords)
{
    const Report r = run_session(load_config_text("dim: 8\nquantities: [trace_lemmas, extrinsic_K]\n"));
    ASSERT_EQ(r.records.size(), 2u);
    EXPECT_EQ(r.records[0].agreement, "error");
    EXPECT_NE(r.records[0].value.find("UnsupportedDimension"), std::string::npos);
    EXPECT_EQ(r.records[1].agreement, "match");
}

TEST(Emit, EmptyReportJson)
{
    Report r;
    const nlohmann::json j = nlohmann::json::parse(emit_json(r));
    EXPECT_TRUE(j.at("records").is_array());
    EXPECT_TRUE(j.at("records").empty());
    EXPECT_TRUE(j.at("metadata").is_object());
    const std::string text = emit_json(r);
    EXPECT_LT(text.find("\"metadata\""), text.find("\"records\""));
}

TEST(Emit, CsvQuoting)
{
    Report r;
    Record rec;
    rec.quantity = "q";
    rec.value = "a,b";
    rec.printed = "say \"x\"";
    r.records.push_back(rec);
    EXPECT_NE(emit_csv(r).find("q,\"a,b\",,,\"say \"\"x\"\"\",0,"), std::string::npos);
}

TEST(Emit, DeterministicAndLosslessRoundTrip)
{
    const SessionConfig cfg = load_config_text("dim: 2\nseed: 11\nverify_lemmas: 10\n");
    const Report a = run_session(cfg), b = run_session(cfg);
    for (const char* f : {"text", "json", "csv"})
        EXPECT_EQ(emit(a, f), emit(b, f)) << f;
    const Report back = parse_report_json(emit_json(a));
    EXPECT_EQ(back, a);
    EXPECT_EQ(emit_json(back), emit_json(a));
    const Alphabet alpha = make_alphabet(cfg.n());
    int parsed = 0;
    for (const auto& rec : a.records) {
        if (rec.quantity.rfind("trace_lemmas", 0) == 0 || rec.agreement == "error")
            continue;
        for (const std::string* s : {&rec.value, &rec.printed})
            if (!s->empty()) {
                EXPECT_EQ(parse_param_poly(*s, alpha).str(), *s) << rec.quantity;
                ++parsed;
            }
    }
    EXPECT_GT(parsed, 20);
}
