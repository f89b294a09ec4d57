#include "oa/annotea.hpp"
#include "oa/selector_engine.hpp"
#include "oa/serialization.hpp"
#include "oa/store.hpp"
#include "oa/trig.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace oa;

// Annotation documents cross the boundary as JSON text; the Python package
// converts to and from dicts.
namespace {

const auto vocab = VocabularyConfig::defaults();

auto parse_annotation(const std::string& json) -> Annotation {
    return from_document(Document::parse(json), vocab);
}

auto violations(const std::string& json) -> std::vector<std::pair<std::string, std::string>> {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& v : validate(parse_annotation(json))) out.emplace_back(v.path, v.message);
    return out;
}

auto quote_span(const std::string& text, const std::string& exact, const std::optional<std::string>& prefix,
                const std::optional<std::string>& suffix) -> std::tuple<std::size_t, std::size_t, bool> {
    const auto m = resolve_text_quote(DocText(text), TextQuote{exact, prefix, suffix});
    return {m.span.start, m.span.end, m.ambiguous};
}

auto position_excerpt(const std::string& text, std::size_t start, std::size_t end) -> std::string {
    const DocText doc(text);
    const auto span = resolve_text_position(doc, TextPosition{start, end});
    return doc.slice(span.start, span.end);
}

auto derive(const std::string& text, std::size_t start, std::size_t end, std::size_t context_len)
    -> std::tuple<std::string, std::string, std::string> {
    const auto q = derive_quote(DocText(text), Span{start, end}, context_len);
    return {q.exact, q.prefix.value_or(""), q.suffix.value_or("")};
}

auto fragment(const std::string& value) -> py::dict {
    py::dict out;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SpatialRegion>) {
                out["kind"] = "xywh";
                out["x"] = v.x;
                out["y"] = v.y;
                out["w"] = v.w;
                out["h"] = v.h;
            } else if constexpr (std::is_same_v<T, TimeInterval>) {
                out["kind"] = "t";
                out["begin"] = v.begin;
                out["end"] = v.end ? py::cast(*v.end) : py::none();
            } else {
                out["kind"] = "opaque";
                out["raw"] = v.raw;
            }
        },
        parse_fragment(value));
    return out;
}

auto in_area(const std::string& kind, const std::vector<double>& params, double x, double y) -> bool {
    auto need = [&](std::size_t n) {
        if (params.size() != n) throw Error(Errc::invalid_value, kind + " takes " + std::to_string(n) + " numbers");
    };
    if (kind == "circle") {
        need(3);
        return point_in_area(SvgArea{Circle{params[0], params[1], params[2]}}, x, y);
    }
    if (kind == "rect") {
        need(4);
        return point_in_area(SvgArea{Rect{params[0], params[1], params[2], params[3]}}, x, y);
    }
    if (kind == "polygon") {
        if (params.size() < 6 || params.size() % 2 != 0) throw Error(Errc::invalid_value, "polygon takes x,y pairs");
        Polygon p;
        for (std::size_t i = 0; i < params.size(); i += 2) p.vertices.push_back({params[i], params[i + 1]});
        return point_in_area(SvgArea{p}, x, y);
    }
    throw Error(Errc::invalid_value, "unknown shape " + kind);
}

class PyStore {
public:
    PyStore(const std::string& dir, const std::optional<std::string>& base_uri, bool sync) {
        StoreOptions o;
        o.sync = sync;
        store_ = base_uri ? AnnotationStore::open(dir, Iri::parse(*base_uri), o)
                          : AnnotationStore::open_existing(dir, o);
    }

    auto put(const std::string& json) -> std::string { return store_->put(parse_annotation(json)).str(); }
    auto get(const std::string& id) const -> std::string {
        return to_document(store_->get(Iri::parse(id)), vocab).dump();
    }
    void remove(const std::string& id) { store_->remove(Iri::parse(id)); }
    auto size() const -> std::size_t { return store_->size(); }
    auto base_uri() const -> std::string { return store_->base_uri().str(); }

    auto query(const std::optional<std::string>& target, const std::optional<std::string>& tag,
               const std::optional<std::string>& author, const std::optional<std::string>& since,
               const std::optional<std::string>& motivation, std::size_t limit, std::size_t offset) const
        -> std::pair<std::size_t, std::vector<std::string>> {
        QueryFilter f;
        if (target) f.target_source = Iri::parse(*target);
        if (tag) f.tag_concept = Iri::parse(*tag);
        f.author = author;
        if (since) f.since = parse_timestamp(*since);
        if (motivation) {
            f.motivation = motivation_from_name(*motivation);
            if (!f.motivation) f.motivation = Motivation::ext(Iri::parse(*motivation));
        }
        f.limit = limit;
        f.offset = offset;
        const auto page = store_->query(f);
        std::vector<std::string> items;
        for (const auto& s : page.items) items.push_back(to_document(s.annotation, vocab).dump());
        return {page.total, items};
    }

private:
    std::unique_ptr<AnnotationStore> store_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Open Annotation core bindings";

    // Raised as OAError(code_name, detail).
    static PyObject* oa_error = py::exception<Error>(m, "OAError", PyExc_ValueError).release().ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        auto raise = [](const std::string& code, const std::string& detail) {
            const auto cls = py::reinterpret_borrow<py::object>(oa_error);
            PyErr_SetObject(oa_error, cls(code, detail).ptr());
        };
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            raise(std::string(e.name()), e.detail());
        } catch (const nlohmann::json::exception& e) {
            raise("MalformedJson", e.what());
        }
    });

    m.def("violations", &violations, py::arg("document"));
    m.def("normalize", [](const std::string& json) { return to_document(parse_annotation(json), vocab).dump(); },
          py::arg("document"));
    m.def("to_trig", [](const std::string& json) { return rdf::write_trig(to_graph(parse_annotation(json), vocab), vocab.oa_ns); },
          py::arg("document"));
    m.def("to_turtle",
          [](const std::string& json) {
              const auto gs = to_graph(parse_annotation(json), vocab);
              return rdf::write_turtle(gs.front(), vocab.oa_ns);
          },
          py::arg("document"));
    m.def("trig_isomorphic",
          [](const std::string& a, const std::string& b) {
              return rdf::graphs_isomorphic(rdf::read_trig(a), rdf::read_trig(b));
          },
          py::arg("a"), py::arg("b"));

    m.def("resolve_text_quote", &quote_span, py::arg("text"), py::arg("exact"), py::arg("prefix") = py::none(),
          py::arg("suffix") = py::none());
    m.def("resolve_text_position", &position_excerpt, py::arg("text"), py::arg("start"), py::arg("end"));
    m.def("derive_quote", &derive, py::arg("text"), py::arg("start"), py::arg("end"), py::arg("context_len"));
    m.def("parse_fragment", &fragment, py::arg("value"));
    m.def("point_in_area", &in_area, py::arg("kind"), py::arg("params"), py::arg("x"), py::arg("y"));

    m.def("annotea_import",
          [](const std::string& record) {
              return to_document(annotea::import_record(annotea::record_from_json(nlohmann::ordered_json::parse(record))),
                                 vocab)
                  .dump();
          },
          py::arg("record"));
    m.def("annotea_export",
          [](const std::string& json) { return annotea::record_to_json(annotea::export_record(parse_annotation(json))).dump(); },
          py::arg("document"));

    py::class_<PyStore>(m, "Store")
        .def(py::init<const std::string&, const std::optional<std::string>&, bool>(), py::arg("directory"),
             py::arg("base_uri") = py::none(), py::arg("sync") = true)
        .def("put", &PyStore::put)
        .def("get", &PyStore::get)
        .def("remove", &PyStore::remove)
        .def("query", &PyStore::query, py::arg("target") = py::none(), py::arg("tag") = py::none(),
             py::arg("author") = py::none(), py::arg("since") = py::none(), py::arg("motivation") = py::none(),
             py::arg("limit") = 100, py::arg("offset") = 0)
        .def("__len__", &PyStore::size)
        .def_property_readonly("base_uri", &PyStore::base_uri);
}
