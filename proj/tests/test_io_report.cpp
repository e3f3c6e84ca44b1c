#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "rsp/errors.hpp"
#include "rsp/io.hpp"
#include "rsp/random.hpp"
#include "rsp/tradeoff.hpp"

namespace {

using namespace rsp;

template <class F>
void expect_kind(F &&f, ErrorKind kind, std::string_view needle = {}) {
    try {
        f();
        ADD_FAILURE() << "expected " << to_string(kind);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
        EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
}

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(io::format_double(0.1), "0.1");
    EXPECT_EQ(io::format_double(1.0), "1");
    random::Engine rng(31);
    for (int i = 0; i < 1000; ++i) {
        const double v = random::standard_normal(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        EXPECT_EQ(io::parse_double(io::format_double(v)), v);
    }
    EXPECT_EQ(io::parse_double(io::format_double(std::numeric_limits<double>::denorm_min())),
              std::numeric_limits<double>::denorm_min());
}

TEST(ParseDouble, RejectsTrailingGarbage) {
    expect_kind([] { io::parse_double("1.5x"); }, ErrorKind::ParseError);
    expect_kind([] { io::parse_double(""); }, ErrorKind::ParseError);
}

TEST(MatrixFile, RoundTripsBitIdentically) {
    random::Engine rng(32);
    const auto rho = random::hilbert_schmidt_density({"a", "b"}, rng);
    const std::string text = io::write_matrix(rho.matrix());
    EXPECT_EQ(text.rfind(io::kMatrixHeader, 0), 0u);
    const auto back = io::read_matrix(text);
    EXPECT_EQ(back, rho.matrix());
    EXPECT_EQ(io::write_matrix(back), text);
}

TEST(MatrixFile, ParseErrorsNameTheLine) {
    expect_kind([] { io::read_matrix("complex matrix\n2\n"); }, ErrorKind::ParseError, "line 1");
    expect_kind([] { io::read_matrix("# complex-matrix v1\ntwo\n"); }, ErrorKind::ParseError, "line 2");
    expect_kind([] { io::read_matrix("# complex-matrix v1\n2\n1,0 0,0\n0,0\n"); }, ErrorKind::ParseError, "line 4");
    expect_kind([] { io::read_matrix("# complex-matrix v1\n1\n1;0\n"); }, ErrorKind::ParseError, "line 3");
    expect_kind([] { io::read_matrix("# complex-matrix v1\n2\n1,0 0,0\n"); }, ErrorKind::ParseError);
}

TEST(Files, UnwritablePathIsIoError) {
    expect_kind([] { io::write_file("/nonexistent-dir/x/y.csv", "x"); }, ErrorKind::IoError);
    expect_kind([] { io::read_file("/nonexistent-dir/missing"); }, ErrorKind::IoError);
    const auto path = std::filesystem::temp_directory_path() / "rsp_io_roundtrip.txt";
    io::write_file(path, "hello\n");
    EXPECT_EQ(io::read_file(path), "hello\n");
    std::filesystem::remove(path);
}

TEST(TradeoffAlphas, EvenGridPlusPolarPoint) {
    const auto a = report::tradeoff_alphas(5);
    ASSERT_EQ(a.size(), 6u);
    EXPECT_EQ(a.front(), 0.0);
    EXPECT_EQ(a.back(), 1.0);
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    EXPECT_NE(std::find(a.begin(), a.end(), std::sqrt(2.0 / 3.0)), a.end());
    expect_kind([] { report::tradeoff_alphas(1); }, ErrorKind::DomainError);
}

class TradeoffTable : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        rows_ = report::tradeoff_table(5);
        cuts_ = report::summarize_cuts();
    }
    static inline std::vector<report::TradeoffRow> rows_;
    static inline report::CutSummary cuts_;
};

TEST_F(TradeoffTable, ColumnsSatisfyTheirDefinitions) {
    double prev = -1.0;
    for (const auto &r : rows_) {
        EXPECT_NEAR(r.f_pole, (1.0 + r.alpha * r.alpha) / 2.0, 1e-15);
        EXPECT_NEAR(r.f_sim_theta0, r.f_pole, 1e-10);
        EXPECT_NEAR(r.alpha * r.alpha + 2.0 * r.beta * r.beta, 1.0, 1e-12);
        EXPECT_GE(r.er_eq10, prev);
        prev = r.er_eq10;
        EXPECT_LE(r.er_numeric_ab, r.eof_ab + r.gap + 1e-12);
        EXPECT_GE(r.alpha, 0.0);
    }
    EXPECT_EQ(rows_.front().er_eq10, 0.0);
    const auto polar = std::find_if(rows_.begin(), rows_.end(),
                                    [](const auto &r) { return r.alpha == std::sqrt(2.0 / 3.0); });
    ASSERT_NE(polar, rows_.end());
    EXPECT_NEAR(polar->f_pole, 5.0 / 6.0, 1e-15);
    EXPECT_NEAR(polar->er_eq10, 0.4425, 1e-3);
    EXPECT_NEAR(polar->eof_ab, 0.3546, 1e-3);
}

TEST_F(TradeoffTable, CsvRoundTripsAndCarriesTheNote) {
    const std::string csv = report::write_tradeoff_csv(rows_, report::discrepancy_note(cuts_));
    EXPECT_EQ(csv.rfind(std::string(report::kTradeoffHeader) + "\n", 0), 0u);
    EXPECT_EQ(report::parse_tradeoff_csv(csv), rows_);
    EXPECT_NE(csv.find("0.6095"), std::string::npos);
    EXPECT_NE(csv.find("0.4425"), std::string::npos);
    EXPECT_NE(csv.find("reported-value discrepancy"), std::string::npos);
}

TEST_F(TradeoffTable, CutSummaryRespectsEofBound) {
    EXPECT_LE(cuts_.equatorial_ree, cuts_.equatorial_eof + cuts_.equatorial_gap);
    EXPECT_LE(cuts_.polar_ree, cuts_.polar_eof + cuts_.polar_gap);
    EXPECT_NEAR(cuts_.equatorial_eof, 0.3085, 1e-3);
    const std::string note = report::discrepancy_note(0.1, 1e-5, 0.2, cuts_);
    EXPECT_NE(note.find("0.6095"), std::string::npos);
    EXPECT_NE(note.find("this state"), std::string::npos);
}

TEST(TradeoffCsv, RejectsBadHeaderAndShortRows) {
    expect_kind([] { report::parse_tradeoff_csv("a,b\n1,2\n"); }, ErrorKind::ParseError, "line 1");
    expect_kind([] { report::parse_tradeoff_csv(std::string(report::kTradeoffHeader) + "\n1,2,3\n"); },
                ErrorKind::ParseError, "line 2");
    expect_kind([] { report::parse_tradeoff_csv("# only a comment\n"); }, ErrorKind::ParseError);
}

}  // namespace
