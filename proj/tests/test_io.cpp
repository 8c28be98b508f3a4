#include "muntz/io.hpp"

#include <gtest/gtest.h>

#include <clocale>
#include <filesystem>

using namespace muntz;

TEST(Json, ExponentSequenceRoundTrip) {
    const auto seq = ExponentSequence::power(2.0, 6);
    const Json j = to_json(seq);
    EXPECT_EQ(j["rule"], "power");
    EXPECT_EQ(j["N"], 6);
    EXPECT_EQ(j["exponents"].size(), 6u);
    const auto back = exponent_sequence_from_json(j);
    EXPECT_EQ(back.exponents(), seq.exponents());
    EXPECT_EQ(back.rule().kind, ExponentRuleKind::Power);

    const auto e = ExponentSequence::explicit_list({1.0, 2.5, 7.0});
    EXPECT_EQ(exponent_sequence_from_json(to_json(e)).exponents(), e.exponents());
    EXPECT_THROW(exponent_sequence_from_json(Json{{"rule", "cubic"}, {"N", 3}}), IoError);
    EXPECT_THROW(exponent_sequence_from_json(Json{{"rule", "power"}}), IoError);
}

TEST(Json, TrigPolynomialRoundTrip) {
    const TrigPolynomial p(0.5, {{1.0, -2.0}, {0.125, 3.0}});
    const Json j = to_json(p);
    EXPECT_EQ(j["harmonics"][1][1], 3.0);
    const auto q = trig_polynomial_from_json(j);
    EXPECT_EQ(q.coefficient_vector(), p.coefficient_vector());
    EXPECT_THROW(trig_polynomial_from_json(Json{{"a0", 1.0}, {"harmonics", {{1.0}}}}), IoError);
}

TEST(Json, PsiWeightRoundTrip) {
    for (const auto& psi : {PsiWeight::power(0.5, 0.5, 1024), PsiWeight::inverse_log(1.0, 64),
                            PsiWeight::table({1.0, 0.5, 0.25}, 0.0, TableTail::Power, 1.0)}) {
        const auto back = psi_weight_from_json(to_json(psi));
        EXPECT_EQ(back.rule(), psi.rule());
        for (std::size_t k : {1u, 3u, 9u}) EXPECT_DOUBLE_EQ(back(k), psi(k));
    }
    EXPECT_EQ(to_json(PsiWeight::table({1.0}, 0.0))["tail"], "none");
}

TEST(Json, MuntzAndStepSystem) {
    const MuntzPolynomial p({{1.0, 2.0}, {3.5, -1.0}});
    EXPECT_DOUBLE_EQ(muntz_polynomial_from_json(to_json(p))(0.4), p(0.4));
    const auto S = StepSystem::from_rows({TrigPolynomial::constant(1.0), TrigPolynomial::cosine(1)});
    const Json j = to_json(S);
    const auto T = step_system_from_json(j);
    EXPECT_EQ(T.lead, S.lead);
    Json bad = j;
    bad["lead"] = {0, 5};
    EXPECT_THROW(step_system_from_json(bad), IoError);
}

TEST(Files, WriteAndReadBack) {
    const auto dir = std::filesystem::temp_directory_path() / "muntz_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "a.json";
    write_text_file(path, R"({"x": 1})");
    EXPECT_EQ(read_json_file(path)["x"], 1);
    EXPECT_FALSE(std::filesystem::exists(dir / "a.json.tmp"));
    EXPECT_THROW(read_json_file(dir / "missing.json"), IoError);
    write_text_file(dir / "bad.json", "{");
    EXPECT_THROW(read_json_file(dir / "bad.json"), IoError);
    EXPECT_THROW(write_text_file(dir / "no" / "such" / "dir.json", "x"), IoError);
    std::filesystem::remove_all(dir);
}

TEST(Csv, LocaleIndependentRoundTripDigits) {
    std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
    const std::string t = csv_table({"n", "value"}, {{1.0, 0.1}, {2.0, 1.0 / 3.0}});
    std::setlocale(LC_NUMERIC, "C");
    EXPECT_EQ(t, "n,value\n1,0.10000000000000001\n2,0.33333333333333331\n");
    EXPECT_THROW(csv_table({"a"}, {{1.0, 2.0}}), IoError);
    EXPECT_EQ(std::stod(format_real(0.1)), 0.1);
}
