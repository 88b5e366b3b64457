#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "finder/bounds.hpp"
#include "finder/config.hpp"
#include "finder/csv.hpp"
#include "finder/evaluation.hpp"
#include "finder/impute.hpp"
#include "finder/kle.hpp"
#include "finder/runner.hpp"
#include "finder/subspace.hpp"
#include "finder/svm.hpp"
#include "finder/synthetic.hpp"

#include <sstream>

namespace py = pybind11;
using namespace finder;

namespace {

// Python-side labels are the strings "A"/"B".
std::vector<ClassLabel> labels_from_strings(const std::vector<std::string>& in) {
    std::vector<ClassLabel> out;
    out.reserve(in.size());
    for (const auto& s : in) {
        if (s == "A") out.push_back(ClassLabel::A);
        else if (s == "B") out.push_back(ClassLabel::B);
        else throw DataError("labels must be 'A' or 'B'");
    }
    return out;
}

std::vector<std::string> labels_to_strings(const std::vector<ClassLabel>& in) {
    std::vector<std::string> out;
    out.reserve(in.size());
    for (ClassLabel l : in) out.emplace_back(l == ClassLabel::B ? "B" : "A");
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Residual-eigenspace feature construction and evaluation";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError",
                                         PyExc_ArithmeticError);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init([](const Eigen::MatrixXd& values,
                         const std::vector<std::string>& labels,
                         const std::vector<std::string>& feature_names) {
                 Dataset d;
                 d.values = values;
                 d.labels = labels_from_strings(labels);
                 d.feature_names = feature_names;
                 d.validate();
                 return d;
             }),
             py::arg("values"),
             py::arg("labels") = std::vector<std::string>{},
             py::arg("feature_names") = std::vector<std::string>{})
        .def_readwrite("values", &Dataset::values)
        .def_property(
            "labels",
            [](const Dataset& d) { return labels_to_strings(d.labels); },
            [](Dataset& d, const std::vector<std::string>& l) {
                d.labels = labels_from_strings(l);
            })
        .def_readwrite("feature_names", &Dataset::feature_names)
        .def_property_readonly(
            "missing_mask",
            [](const Dataset& d) {
                return Eigen::MatrixX<bool>(d.missing_mask);
            })
        .def_property_readonly("n_samples", &Dataset::n_samples)
        .def_property_readonly("n_features", &Dataset::n_features)
        .def("any_missing", &Dataset::any_missing);

    py::class_<Eigensystem>(m, "Eigensystem")
        .def_readonly("mean", &Eigensystem::mean)
        .def_readonly("eigenvalues", &Eigensystem::eigenvalues)
        .def_readonly("eigenvectors", &Eigensystem::eigenvectors)
        .def_readonly("effective_rank", &Eigensystem::effective_rank);

    m.def("empirical_mean",
          py::overload_cast<const Eigen::MatrixXd&>(&empirical_mean),
          py::arg("rows"));
    m.def("empirical_covariance",
          py::overload_cast<const Eigen::MatrixXd&, const Eigen::VectorXd&>(
              &empirical_covariance),
          py::arg("rows"), py::arg("mean"));
    m.def("eigendecompose", &eigendecompose, py::arg("cov"),
          py::arg("rank_tol") = kDefaultRankTol);
    m.def("eigendecompose_dual", &eigendecompose_dual,
          py::arg("centered_rows"), py::arg("rank_tol") = kDefaultRankTol);
    m.def("truncation_error", &truncation_error, py::arg("eig"), py::arg("m"));
    m.def("energy_truncation", &energy_truncation, py::arg("eig"),
          py::arg("fraction"));

    py::enum_<Variant>(m, "Variant")
        .value("DIRECT", Variant::Direct)
        .value("MLS", Variant::Mls)
        .value("ACA_S", Variant::AcaS)
        .value("ACA_L", Variant::AcaL)
        .value("COMPLEMENT", Variant::Complement);

    py::class_<SubspaceBasis>(m, "SubspaceBasis")
        .def_readonly("vectors", &SubspaceBasis::vectors)
        .def_readonly("variant", &SubspaceBasis::variant)
        .def_readonly("parent_m_a", &SubspaceBasis::parent_m_a)
        .def_property_readonly("m_res", &SubspaceBasis::m_res);

    py::class_<FeatureTransform>(m, "FeatureTransform")
        .def_readonly("class_a_mean", &FeatureTransform::class_a_mean)
        .def_readonly("basis", &FeatureTransform::basis)
        .def_property_readonly("objective",
                               [](const FeatureTransform& t) {
                                   return t.objective;
                               })
        .def("apply", &FeatureTransform::apply, py::arg("v"))
        .def("apply_rows", &FeatureTransform::apply_rows, py::arg("rows"));

    m.def("complement_basis", &complement_basis, py::arg("eig_a"),
          py::arg("m_a"));
    m.def("direct_residual", &direct_residual, py::arg("eig_a"),
          py::arg("m_a"));
    m.def("mls_basis", &mls_basis, py::arg("f"), py::arg("eig_a"),
          py::arg("m_a"), py::arg("m_res"));
    py::enum_<AcaMode>(m, "AcaMode")
        .value("SMALL", AcaMode::Small)
        .value("LARGE", AcaMode::Large);
    m.def("aca_subspace", &aca_subspace, py::arg("eig_a"), py::arg("cov_b"),
          py::arg("m_a"), py::arg("m_res"), py::arg("mode"));

    py::class_<MarkovBound>(m, "MarkovBound")
        .def_readonly("epsilon", &MarkovBound::epsilon)
        .def_readonly("expected_energy", &MarkovBound::expected_energy)
        .def_readonly("rhs", &MarkovBound::rhs)
        .def_readonly("per_term", &MarkovBound::per_term);
    m.def("markov_rhs", &markov_rhs, py::arg("eig"), py::arg("basis"),
          py::arg("epsilon"));
    m.def("tail_bound", &tail_bound, py::arg("eig"), py::arg("m_a"));

    py::enum_<Kernel::Type>(m, "KernelType")
        .value("LINEAR", Kernel::Type::Linear)
        .value("RBF", Kernel::Type::Rbf);
    py::class_<Kernel>(m, "Kernel")
        .def_static("linear", &Kernel::linear)
        .def_static("rbf", &Kernel::rbf, py::arg("gamma"));
    py::class_<SvmModel>(m, "SvmModel")
        .def_readonly("support_vectors", &SvmModel::support_vectors)
        .def_readonly("dual_coefficients", &SvmModel::dual_coefficients)
        .def_readonly("bias", &SvmModel::bias)
        .def_readonly("cost", &SvmModel::cost);
    m.def("svm_train", &svm_train, py::arg("features"), py::arg("labels"),
          py::arg("kernel"), py::arg("cost") = 1.0, py::arg("tol") = 1e-3,
          py::arg("max_iter") = 10000000L);
    m.def("svm_score", &svm_score, py::arg("model"), py::arg("features"));
    m.def("default_rbf_gamma", &default_rbf_gamma, py::arg("features"));

    py::enum_<CoefficientLaw>(m, "CoefficientLaw")
        .value("STANDARD_GAUSSIAN", CoefficientLaw::StandardGaussian)
        .value("RADEMACHER", CoefficientLaw::Rademacher)
        .value("UNIFORM_SYM", CoefficientLaw::UniformSym);
    py::class_<SynthSpec>(m, "SynthSpec")
        .def(py::init([](const Eigen::VectorXd& mean,
                         const Eigen::VectorXd& eigenvalues,
                         const Eigen::MatrixXd& eigenvectors,
                         CoefficientLaw law, std::uint64_t seed) {
                 SynthSpec s;
                 s.mean = mean;
                 s.eigenvalues = eigenvalues;
                 s.eigenvectors = eigenvectors;
                 s.law = law;
                 s.seed = seed;
                 s.validate();
                 return s;
             }),
             py::arg("mean"), py::arg("eigenvalues"), py::arg("eigenvectors"),
             py::arg("law") = CoefficientLaw::StandardGaussian,
             py::arg("seed") = 0)
        .def_readonly("mean", &SynthSpec::mean)
        .def_readonly("eigenvalues", &SynthSpec::eigenvalues)
        .def_readonly("eigenvectors", &SynthSpec::eigenvectors)
        .def("covariance", &SynthSpec::covariance);
    m.def("sample", &sample, py::arg("spec"), py::arg("n"));
    m.def("two_class_scenario", &two_class_scenario, py::arg("f"),
          py::arg("shared_mean"), py::arg("a_spectrum"), py::arg("b_spectrum"),
          py::arg("overlap_dims"), py::arg("seed"));

    py::enum_<Regime>(m, "Regime")
        .value("BALANCED", Regime::Balanced)
        .value("UNBALANCED", Regime::Unbalanced);
    py::class_<ClassSplit>(m, "ClassSplit")
        .def_readonly("a_cov", &ClassSplit::a_cov)
        .def_readonly("a_svm", &ClassSplit::a_svm)
        .def_readonly("b_train", &ClassSplit::b_train)
        .def_readonly("test_a", &ClassSplit::test_a)
        .def_readonly("test_b", &ClassSplit::test_b);
    m.def("make_splits", &make_splits, py::arg("n_a"), py::arg("n_b"),
          py::arg("regime"));
    m.def("auc", &auc, py::arg("scores_a"), py::arg("scores_b"));
    m.def("accuracy", &accuracy, py::arg("scores_a"), py::arg("scores_b"),
          py::arg("threshold") = 0.0);

    py::class_<MaPolicy>(m, "MaPolicy")
        .def_static("count", &MaPolicy::count, py::arg("m"))
        .def_static("energy", &MaPolicy::energy, py::arg("fraction"));
    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("variant", &PipelineConfig::variant)
        .def_readwrite("m_a", &PipelineConfig::m_a)
        .def_readwrite("m_res", &PipelineConfig::m_res)
        .def_readwrite("regime", &PipelineConfig::regime)
        .def_readwrite("kernel", &PipelineConfig::kernel)
        .def_readwrite("cost", &PipelineConfig::cost)
        .def_readwrite("gamma", &PipelineConfig::gamma)
        .def_readwrite("gamma_scale", &PipelineConfig::gamma_scale)
        .def_readwrite("svm_tol", &PipelineConfig::svm_tol)
        .def_readwrite("seed", &PipelineConfig::seed)
        .def_readwrite("shuffle", &PipelineConfig::shuffle)
        .def_readwrite("threads", &PipelineConfig::threads);

    py::class_<RoundResult>(m, "RoundResult")
        .def_readonly("round", &RoundResult::round)
        .def_readonly("test_a", &RoundResult::test_a)
        .def_readonly("test_b", &RoundResult::test_b)
        .def_readonly("score_a", &RoundResult::score_a)
        .def_readonly("score_b", &RoundResult::score_b)
        .def_readonly("ms", &RoundResult::ms);
    py::class_<CvReport>(m, "CvReport")
        .def_readonly("per_round", &CvReport::per_round)
        .def_readonly("auc", &CvReport::auc)
        .def_readonly("accuracy", &CvReport::accuracy)
        .def_readonly("mean_round_ms", &CvReport::mean_round_ms)
        .def_readonly("m_a_used", &CvReport::m_a_used)
        .def_readonly("config_echo", &CvReport::config_echo);
    m.def("run_lpocv", &run_lpocv, py::arg("data"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    m.def("load_csv",
          py::overload_cast<const std::string&, const std::string&,
                            const std::string&>(&load_csv),
          py::arg("path"), py::arg("label_column"), py::arg("positive_label"));
    m.def("load_csv", py::overload_cast<const std::string&>(&load_csv),
          py::arg("path"));
    m.def("write_csv", &write_csv, py::arg("path"), py::arg("data"),
          py::arg("label_column") = "label", py::arg("label_a") = "A",
          py::arg("label_b") = "B");
    m.def("knn_impute", &knn_impute, py::arg("data"), py::arg("k"));

    m.def(
        "run_experiment",
        [](const std::string& config_path) {
            std::ostringstream log;
            cmd_run(parse_config_file(config_path), log);
            return log.str();
        },
        py::arg("config_path"),
        "Run the full experiment described by a config file; returns the log");
}
