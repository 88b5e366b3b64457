#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "finder/csv.hpp"
#include "finder/impute.hpp"
#include "oracles.hpp"

using namespace finder;

namespace {

// Scratch file that cleans up after itself.
struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& name, const std::string& content = "")
        : path("/tmp/finder_test_" + name) {
        if (!content.empty()) {
            std::ofstream out(path);
            out << content;
        }
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

} // namespace

TEST_SUITE("csv") {

TEST_CASE("loads a labeled table and binarizes on the positive label") {
    TempCsv file("basic.csv",
                 "x,y,group\n"
                 "1.5,2,ctrl\n"
                 "-3,0.25,case\n"
                 "10,1e-2,other\n");
    const Dataset d = load_csv(file.path, "group", "case");

    REQUIRE(d.n_samples() == 3);
    REQUIRE(d.n_features() == 2);
    CHECK(d.feature_names == std::vector<std::string>{"x", "y"});
    CHECK(d.values(0, 0) == 1.5);
    CHECK(d.values(1, 1) == 0.25);
    CHECK(d.values(2, 1) == 0.01);
    // Only the positive label becomes class B; everything else is A.
    CHECK(d.labels ==
          std::vector<ClassLabel>{ClassLabel::A, ClassLabel::B,
                                  ClassLabel::A});
    CHECK(!d.has_mask());
}

TEST_CASE("empty cells and nan tokens in any case become missing") {
    TempCsv file("missing.csv",
                 "a,b,c\n"
                 "1,,3\n"
                 "4,NaN,nan\n"
                 "7,8,nAN\n");
    const Dataset d = load_csv(file.path);
    REQUIRE(d.has_mask());
    CHECK(d.missing_mask.cast<int>().sum() == 4);
    CHECK(d.missing_mask(0, 1));
    CHECK(d.missing_mask(1, 1));
    CHECK(d.missing_mask(1, 2));
    CHECK(d.missing_mask(2, 2));
    CHECK(d.values(1, 0) == 4.0);
    CHECK(d.labels.empty());
}

TEST_CASE("tolerates blank lines, surrounding spaces, and CRLF endings") {
    TempCsv file("crlf.csv", "a,b\r\n 1 , 2\r\n\r\n3,4\n\n");
    const Dataset d = load_csv(file.path);
    REQUIRE(d.n_samples() == 2);
    CHECK(d.values(0, 0) == 1.0);
    CHECK(d.values(0, 1) == 2.0);
    CHECK(d.values(1, 1) == 4.0);
}

TEST_CASE("loader failures name the file location") {
    TempCsv bad("bad_cell.csv", "a,b\n1,oops\n");
    try {
        load_csv(bad.path);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find(":2:") != std::string::npos);
        CHECK(msg.find("'b'") != std::string::npos);
        CHECK(msg.find("oops") != std::string::npos);
    }

    TempCsv ragged("ragged.csv", "a,b\n1\n");
    CHECK_THROWS_AS(load_csv(ragged.path), DataError);

    TempCsv nolabel("nolabel.csv", "a,b\n1,2\n");
    CHECK_THROWS_WITH_AS(load_csv(nolabel.path, "group", "case"),
                         doctest::Contains("label column 'group'"),
                         DataError);

    TempCsv empty("empty.csv", " ");
    CHECK_THROWS_AS(load_csv(empty.path), DataError);

    TempCsv headeronly("headeronly.csv", "a,b\n");
    CHECK_THROWS_AS(load_csv(headeronly.path), DataError);

    TempCsv blanklabel("blanklabel.csv", "a,g\n1,\n");
    CHECK_THROWS_WITH_AS(load_csv(blanklabel.path, "g", "x"),
                         doctest::Contains("missing label"), DataError);

    CHECK_THROWS_AS(load_csv("/nonexistent/finder.csv"), DataError);
}

TEST_CASE("write then load reproduces every bit, extremes included") {
    Dataset d;
    d.values.resize(3, 3);
    d.values << 1e300, -1e-300, 0.1 + 0.2, //
        -17.0, 3.141592653589793, 2.2250738585072014e-308, //
        0.0, -123456789.123456789, 1.0 / 3.0;
    d.missing_mask.setConstant(3, 3, false);
    d.missing_mask(1, 2) = true;
    d.labels = {ClassLabel::A, ClassLabel::B, ClassLabel::A};
    d.feature_names = {"alpha", "beta", "gamma"};

    TempCsv file("roundtrip.csv");
    write_csv(file.path, d);
    const Dataset back = load_csv(file.path, "label", "B");

    REQUIRE(back.n_samples() == 3);
    REQUIRE(back.n_features() == 3);
    CHECK(back.feature_names == d.feature_names);
    CHECK(back.labels == d.labels);
    REQUIRE(back.has_mask());
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) {
            CHECK(back.missing_mask(i, j) == d.missing_mask(i, j));
            if (!d.missing_mask(i, j))
                CHECK(back.values(i, j) == d.values(i, j));
        }
}

TEST_CASE("unnamed features are written as f0, f1, ...") {
    Dataset d;
    d.values.resize(1, 2);
    d.values << 5, 6;
    TempCsv file("autoname.csv");
    write_csv(file.path, d);
    const Dataset back = load_csv(file.path);
    CHECK(back.feature_names == std::vector<std::string>{"f0", "f1"});
    CHECK(back.values(0, 1) == 6.0);
}

TEST_CASE("the table writer passes raw label text through untouched") {
    Dataset d;
    d.values.resize(2, 1);
    d.values << 1, 2;
    TempCsv file("rawlabels.csv");
    write_csv_table(file.path, d, "diagnosis", {"CN", "LMCI"});

    const CsvTable back = load_csv_table(file.path, "diagnosis");
    CHECK(back.row_labels == std::vector<std::string>{"CN", "LMCI"});
    CHECK(back.data.labels.empty());
    CHECK(back.data.values(1, 0) == 2.0);

    CHECK_THROWS_AS(write_csv_table(file.path, d, "diagnosis", {"CN"}),
                    DataError);
}

} // TEST_SUITE("csv")

TEST_SUITE("impute") {

TEST_CASE("a complete dataset passes through unchanged") {
    Dataset d;
    d.values.resize(2, 2);
    d.values << 1, 2, 3, 4;
    const Dataset out = knn_impute(d, 3);
    CHECK((out.values.array() == d.values.array()).all());
    CHECK(!out.any_missing());
}

TEST_CASE("with k covering everyone the fill is the column mean") {
    Dataset d;
    d.values.resize(4, 2);
    d.values << 0, 1, 0, 2, 0, 6, 0, 0;
    d.missing_mask.setConstant(4, 2, false);
    d.missing_mask(3, 1) = true;
    const Dataset out = knn_impute(d, 50);
    CHECK(out.values(3, 1) == (1.0 + 2.0 + 6.0) / 3.0);
    CHECK(!out.any_missing());
}

TEST_CASE("equidistant neighbours break ties by row index") {
    Dataset d;
    d.values.resize(3, 2);
    d.values << 0, 0, 1, 10, -1, 20;
    d.missing_mask.setConstant(3, 2, false);
    d.missing_mask(0, 1) = true;
    // Rows 1 and 2 sit at squared distance 1 from row 0 on the shared
    // coordinate; the lower row index must win.
    const Dataset out = knn_impute(d, 1);
    CHECK(out.values(0, 1) == 10.0);
}

TEST_CASE("rows sharing no observed coordinate rank last") {
    Dataset d;
    d.values.resize(3, 2);
    d.values << 0, 5, 3, 0, 4, 6;
    d.missing_mask.setConstant(3, 2, false);
    d.missing_mask(0, 0) = true; // row 0 observes only column 1
    d.missing_mask(1, 1) = true; // row 1 observes only column 0
    CHECK(knn_impute(d, 1).values(0, 0) == 4.0);
    CHECK(knn_impute(d, 2).values(0, 0) == (3.0 + 4.0) / 2.0);
}

TEST_CASE("matches the brute-force oracle on a seeded problem") {
    oracle::TestRng rng(81);
    Dataset d;
    d.values.resize(8, 4);
    for (Index i = 0; i < 8; ++i)
        for (Index j = 0; j < 4; ++j) d.values(i, j) = rng.gauss();
    d.missing_mask.setConstant(8, 4, false);
    d.missing_mask(0, 3) = true;
    d.missing_mask(4, 0) = true;
    d.missing_mask(6, 3) = true;

    const Dataset ours = knn_impute(d, 2);
    const Eigen::MatrixXd expect =
        oracle::knn_impute_oracle(d.values, d.missing_mask, 2);
    CHECK((ours.values - expect).array().abs().maxCoeff() == 0.0);
    CHECK(!ours.any_missing());
}

TEST_CASE("rejects an entirely unobserved column, naming it") {
    Dataset d;
    d.values.resize(2, 2);
    d.values << 1, 0, 2, 0;
    d.missing_mask.setConstant(2, 2, false);
    d.missing_mask(0, 1) = true;
    d.missing_mask(1, 1) = true;

    CHECK_THROWS_WITH_AS(knn_impute(d, 1), doctest::Contains("column 1"),
                         DataError);
    d.feature_names = {"age", "score"};
    CHECK_THROWS_WITH_AS(knn_impute(d, 1), doctest::Contains("'score'"),
                         DataError);
    CHECK_THROWS_AS(knn_impute(d, 0), UsageError);
}

} // TEST_SUITE("impute")
