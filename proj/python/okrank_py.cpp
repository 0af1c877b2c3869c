#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "okrank/bijection.hpp"
#include "okrank/counting.hpp"
#include "okrank/identities.hpp"
#include "okrank/qobjects.hpp"

namespace py = pybind11;
using namespace okrank;

namespace {

// Coefficients 0..trunc as Python ints (arbitrary precision survives via str).
py::list int_coeffs(const Series<Integer>& s, int trunc)
{
    py::list out;
    py::object to_int = py::module_::import("builtins").attr("int");
    for (int n = 0; n <= trunc; ++n) {
        out.append(to_int(s.coeff(n).get_str()));
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_okrank, m)
{
    m.doc() = "native core of the okrank package";
    m.attr("__version__") = OKRANK_VERSION;

    static py::exception<Error> base(m, "OkrankError");
    static py::exception<UsageError> usage(m, "UsageError", base.ptr());
    static py::exception<ValidationError> validation(m, "ValidationError", base.ptr());
    static py::exception<DomainError> domain(m, "DomainError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const UsageError& e) {
            usage(e.what());
        } catch (const ValidationError& e) {
            validation(e.what());
        } catch (const DomainError& e) {
            domain(e.what());
        } catch (const Error& e) {
            base(e.what());
        }
    });

    m.def("over_to_vector_json", [](const std::string& text) { return to_json(over_to_vector(parse_overpartition(text))).dump(); });
    m.def("vector_to_over", [](const std::string& json) {
        return format(vector_to_over(vector_partition_from_json(nlohmann::json::parse(json))));
    });
    m.def("kbar_rank", [](const std::string& text, int k) { return kbar_rank(parse_overpartition(text), k); },
          py::arg("overpartition"), py::arg("k"));
    m.def("k_conjugate", [](const std::string& text, int k) { return format(k_conjugate(parse_overpartition(text), k)); },
          py::arg("overpartition"), py::arg("k"));
    m.def("is_self_k_conjugate",
          [](const std::string& text, int k) { return is_self_k_conjugate(parse_overpartition(text), k); },
          py::arg("overpartition"), py::arg("k"));
    m.def("generalized_durfee", [](const std::string& text) { return generalized_durfee(parse_overpartition(text)); });
    m.def("overpartitions", [](int n) {
        std::vector<std::string> out;
        for (const auto& o : enumerate_overpartitions(n)) {
            out.push_back(format(o));
        }
        return out;
    });

    m.def(
        "rank_table_json",
        [](const std::string& stat, const std::string& method, int max_n, int k) {
            const Stat s = parse_stat(stat);
            const Method me = parse_method(method);
            RankTable t;
            {
                py::gil_scoped_release nogil;
                t = rank_table(s, me, max_n, k);
            }
            return to_json(t).dump();
        },
        py::arg("stat"), py::arg("method"), py::arg("max_n"), py::arg("k") = 0);

    m.def("list_identities", &list_identities);
    m.def(
        "verify_json",
        [](const std::string& id, std::optional<int> order, std::optional<int> perturb) {
            VerificationReport r;
            {
                py::gil_scoped_release nogil;
                r = verify(id, {order, perturb});
            }
            return to_json(r).dump();
        },
        py::arg("id"), py::arg("order") = py::none(), py::arg("perturb") = py::none());
    m.def(
        "verify_all_json",
        [](double scale, int jobs) {
            std::vector<VerificationReport> rs;
            {
                py::gil_scoped_release nogil;
                rs = verify_all(scale, jobs);
            }
            std::vector<std::string> out;
            for (const auto& r : rs) {
                out.push_back(to_json(r).dump());
            }
            return out;
        },
        py::arg("scale") = 1.0, py::arg("jobs") = 1);

    m.def("mock_X", [](int trunc) { return int_coeffs(mock_X<Integer>(trunc), trunc); });
    m.def("mock_chi", [](int trunc) { return int_coeffs(mock_chi<Integer>(trunc), trunc); });
    m.def("euler_product", [](int trunc) { return int_coeffs(poch_inf<Integer>(qmono(1, 1), 1, trunc), trunc); });
}
