#include "korovkin/parse.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace korovkin {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& text, const std::string& whole, std::size_t pos) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + text + "'", whole, pos);
    }
}

int parse_int(const std::string& text, const std::string& whole, std::size_t pos) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + text + "'", whole, pos);
    }
}

std::vector<double> parse_doubles(const std::string& text, char sep, const std::string& whole,
                                  std::size_t pos) {
    std::vector<double> out;
    for (const std::string& part : split(text, sep)) out.push_back(parse_double(part, whole, pos));
    return out;
}

}  // namespace

ParseError::ParseError(const std::string& what, const std::string& input, std::size_t pos)
    : std::runtime_error(what + " in '" + input + "' at position " + std::to_string(pos)),
      pos_(pos) {}

FunctionSpec parse_function(const std::string& text) {
    std::size_t colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    std::size_t rpos = colon == std::string::npos ? text.size() : colon + 1;

    FunctionSpec spec;
    if (head == "const") {
        spec = FunctionSpec::constant(parse_double(rest, text, rpos));
    } else if (head == "pr") {
        spec = FunctionSpec::projection(parse_int(rest, text, rpos));
    } else if (head == "negpr") {
        spec = FunctionSpec::neg_projection(parse_int(rest, text, rpos));
    } else if (head == "sq") {
        spec = FunctionSpec::sum_of_squares();
    } else if (head == "mono") {
        spec = FunctionSpec::monomial(parse_int(rest, text, rpos));
    } else if (head == "step") {
        std::size_t at = rest.find('@');
        if (at == std::string::npos)
            throw ParseError("step needs 'jumps@levels'", text, rpos);
        spec = FunctionSpec::step(parse_doubles(rest.substr(0, at), ',', text, rpos),
                                  parse_doubles(rest.substr(at + 1), ',', text, rpos + at + 1));
    } else if (head == "cos") {
        spec = FunctionSpec::cosine();
    } else if (head == "sin") {
        spec = FunctionSpec::sine();
    } else if (head == "negcos") {
        spec = FunctionSpec::neg_cosine();
    } else if (head == "negsin") {
        spec = FunctionSpec::neg_sine();
    } else if (head == "table") {
        spec = FunctionSpec::table_values(parse_doubles(rest, ',', text, rpos));
    } else {
        throw ParseError("unknown function '" + head + "'", text, 0);
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), text, 0);
    }
    return spec;
}

Capacity parse_capacity(const std::string& text) {
    std::size_t colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    std::size_t rpos = colon == std::string::npos ? text.size() : colon + 1;

    try {
        if (head == "id") return Capacity(Distortion::identity());
        if (head == "sqrt") return Capacity(Distortion::sqrt());
        if (head == "pow") return Capacity(Distortion::power(parse_double(rest, text, rpos)));
        if (head == "table") {
            std::vector<double> knots, values;
            for (const std::string& pair : split(rest, ';')) {
                std::vector<double> kv = parse_doubles(pair, ',', text, rpos);
                if (kv.size() != 2)
                    throw ParseError("table capacity entries are 'knot,value'", text, rpos);
                knots.push_back(kv[0]);
                values.push_back(kv[1]);
            }
            return Capacity(Distortion::table(std::move(knots), std::move(values)));
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), text, 0);
    }
    throw ParseError("unknown capacity '" + head + "'", text, 0);
}

namespace {

OperatorSpec::Family parse_family_name(const std::string& head, const std::string& whole) {
    using Family = OperatorSpec::Family;
    if (head == "bk1") return Family::Bk1;
    if (head == "bkc1") return Family::Bkc1;
    if (head == "bkc2") return Family::Bkc2;
    if (head == "szasz") return Family::Szasz;
    if (head == "slide") return Family::Slide;
    if (head == "slide-trunc") return Family::SlideTrunc;
    if (head == "perturb") return Family::PerturbSq;
    if (head == "maximal") return Family::Maximal;
    throw ParseError("unknown operator family '" + head + "'", whole, 0);
}

}  // namespace

OperatorSpec parse_operator(const std::string& text) {
    OperatorSpec spec;
    std::size_t colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    std::size_t rpos = colon == std::string::npos ? text.size() : colon + 1;

    if (head.starts_with("cesaro(")) {
        if (head.back() != ')') throw ParseError("expected 'cesaro(family)'", text, head.size());
        spec.family = OperatorSpec::Family::Cesaro;
        spec.cesaro_inner = parse_family_name(head.substr(7, head.size() - 8), text);
    } else {
        spec.family = parse_family_name(head, text);
    }

    if (!rest.empty()) {
        for (const std::string& kv : split(rest, ',')) {
            std::size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw ParseError("expected key=value, got '" + kv + "'", text, rpos);
            std::string key = kv.substr(0, eq);
            std::string value = kv.substr(eq + 1);
            if (key == "n") {
                spec.n = parse_int(value, text, rpos);
            } else if (key == "cap") {
                spec.cap = parse_capacity(value);
            } else if (key == "tail") {
                spec.tail_tol = parse_double(value, text, rpos);
            } else if (key == "xmax") {
                spec.x_max = parse_double(value, text, rpos);
            } else if (key == "r") {
                spec.r = parse_double(value, text, rpos);
            } else if (key == "R") {
                spec.R = parse_double(value, text, rpos);
            } else if (key == "radii") {
                spec.radii = parse_doubles(value, ';', text, rpos);
            } else {
                throw ParseError("unknown operator key '" + key + "'", text, rpos);
            }
        }
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), text, 0);
    }
    return spec;
}

DomainKind parse_domain_kind(const std::string& text) {
    if (text == "cube1") return DomainKind::Cube1;
    if (text == "cube2") return DomainKind::Cube2;
    if (text == "cone1") return DomainKind::PositiveCone1;
    if (text == "cone2") return DomainKind::PositiveCone2;
    if (text == "circle") return DomainKind::Circle;
    throw ParseError("unknown domain '" + text + "' (cube1|cube2|cone1|cone2|circle)", text, 0);
}

ConvergenceMode parse_mode(const std::string& text) {
    if (text == "pointwise") return ConvergenceMode::Pointwise;
    if (text == "measure") return ConvergenceMode::InMeasure;
    if (text == "lp") return ConvergenceMode::Lp;
    throw ParseError("unknown mode '" + text + "' (pointwise|measure|lp)", text, 0);
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

std::string join(const std::vector<double>& v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += format_number(v[i]);
    }
    return out;
}

}  // namespace

std::string to_string(const FunctionSpec& spec) {
    switch (spec.kind) {
        case FunctionKind::Constant: return "const:" + format_number(spec.c);
        case FunctionKind::Projection: return "pr:" + std::to_string(spec.axis);
        case FunctionKind::NegProjection: return "negpr:" + std::to_string(spec.axis);
        case FunctionKind::SumOfSquares: return "sq";
        case FunctionKind::Monomial: return "mono:" + std::to_string(spec.degree);
        case FunctionKind::Step: return "step:" + join(spec.jumps, ',') + "@" + join(spec.levels, ',');
        case FunctionKind::Cosine: return "cos";
        case FunctionKind::Sine: return "sin";
        case FunctionKind::NegCosine: return "negcos";
        case FunctionKind::NegSine: return "negsin";
        case FunctionKind::Table: return "table:" + join(spec.table, ',');
    }
    return "?";
}

std::string to_string(const Capacity& cap) {
    switch (cap.gamma.kind) {
        case DistortionKind::Identity: return "id";
        case DistortionKind::Sqrt: return "sqrt";
        case DistortionKind::Power: return "pow:" + format_number(cap.gamma.alpha);
        case DistortionKind::Table: {
            std::string out = "table:";
            for (std::size_t i = 0; i < cap.gamma.knots.size(); ++i) {
                if (i) out += ';';
                out += format_number(cap.gamma.knots[i]) + "," + format_number(cap.gamma.knot_values[i]);
            }
            return out;
        }
    }
    return "?";
}

std::string to_string(const OperatorSpec& spec) {
    using Family = OperatorSpec::Family;
    auto family_name = [](Family f) -> std::string {
        switch (f) {
            case Family::Bk1: return "bk1";
            case Family::Bkc1: return "bkc1";
            case Family::Bkc2: return "bkc2";
            case Family::Szasz: return "szasz";
            case Family::Slide: return "slide";
            case Family::SlideTrunc: return "slide-trunc";
            case Family::PerturbSq: return "perturb";
            case Family::Maximal: return "maximal";
            case Family::Cesaro: return "cesaro";
        }
        return "?";
    };
    std::string head = spec.family == Family::Cesaro
                           ? "cesaro(" + family_name(*spec.cesaro_inner) + ")"
                           : family_name(spec.family);
    switch (spec.family) {
        case Family::Bk1:
        case Family::PerturbSq:
            return head + ":n=" + std::to_string(spec.n);
        case Family::Bkc1:
        case Family::Bkc2:
            return head + ":n=" + std::to_string(spec.n) + ",cap=" + to_string(spec.cap);
        case Family::Szasz:
            return head + ":n=" + std::to_string(spec.n) + ",cap=" + to_string(spec.cap) +
                   ",tail=" + format_number(spec.tail_tol) + ",xmax=" + format_number(spec.x_max);
        case Family::Slide:
        case Family::SlideTrunc:
            return head + ":r=" + format_number(spec.r) + ",R=" + format_number(spec.R);
        case Family::Maximal:
            return spec.radii.empty() ? head : head + ":radii=" + join(spec.radii, ';');
        case Family::Cesaro:
            return head + ":n=" + std::to_string(spec.n);
    }
    return "?";
}

std::string to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::Cube1: return "cube1";
        case DomainKind::Cube2: return "cube2";
        case DomainKind::PositiveCone1: return "cone1";
        case DomainKind::PositiveCone2: return "cone2";
        case DomainKind::Circle: return "circle";
    }
    return "?";
}

std::string to_string(ConvergenceMode mode) {
    switch (mode) {
        case ConvergenceMode::Pointwise: return "pointwise";
        case ConvergenceMode::InMeasure: return "measure";
        case ConvergenceMode::Lp: return "lp";
    }
    return "?";
}

}  // namespace korovkin
