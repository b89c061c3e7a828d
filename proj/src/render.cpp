#include "ctrlk/render.hpp"

#include <sstream>

#include "ctrlk/errors.hpp"
#include "ctrlk/squeeze.hpp"

namespace ctrlk {

namespace {

constexpr int kWidth = 720, kHeight = 480, kMargin = 50;

// Fixed-point pixel coordinate with two decimals, rounded half-up; exact
// integer arithmetic keeps the output byte-stable.
std::string px_str(const Rational& v) {
    Rational scaled = v * Rational(100) + Rational(1, 2);
    mpz_class z = scaled.floor();
    mpz_class q = z / 100, r = z % 100;
    if (r < 0) {
        r += 100;
        q -= 1;
    }
    std::string frac = r.get_str();
    if (frac.size() < 2) frac.insert(frac.begin(), '0');
    return q.get_str() + "." + frac;
}

struct Canvas {
    Rational x_lo, x_hi, t_lo, t_hi;
    Rational sx, sy;
    std::ostringstream out;

    explicit Canvas(const Window& w)
        : x_lo(w.x_lo), x_hi(w.x_hi), t_lo(w.t_lo), t_hi(w.t_hi) {
        if (!(x_hi > x_lo) || !(t_hi > t_lo))
            throw UsageError("rendering needs a window with positive extent");
        sx = Rational(kWidth - 2 * kMargin) / (x_hi - x_lo);
        sy = Rational(kHeight - 2 * kMargin) / (t_hi - t_lo);
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
            << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
            << "<defs><marker id=\"arrow\" viewBox=\"0 0 8 8\" refX=\"7\" refY=\"4\" "
               "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">"
               "<path d=\"M 0 0 L 8 4 L 0 8 z\" fill=\"#374151\"/></marker></defs>\n"
            << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
            << "\" fill=\"#ffffff\"/>\n";
    }

    Rational px(const Rational& x) const { return Rational(kMargin) + (x - x_lo) * sx; }
    Rational py(const Rational& t) const {
        return Rational(kHeight - kMargin) - (t - t_lo) * sy;
    }

    void axes() {
        out << "<g stroke=\"#9ca3af\" stroke-width=\"1\">\n";
        out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
            << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\"/>\n";
        out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
            << "\" y2=\"" << kHeight - kMargin << "\"/>\n";
        out << "</g>\n<g fill=\"#6b7280\" font-size=\"11\" font-family=\"monospace\">\n";
        for (mpz_class k = -((-x_lo).floor()); k <= x_hi.floor(); ++k) {
            Rational x{k, 1};
            out << "<line x1=\"" << px_str(px(x)) << "\" y1=\"" << kHeight - kMargin
                << "\" x2=\"" << px_str(px(x)) << "\" y2=\"" << kHeight - kMargin + 4
                << "\" stroke=\"#9ca3af\"/>\n";
            out << "<text x=\"" << px_str(px(x)) << "\" y=\"" << kHeight - kMargin + 16
                << "\" text-anchor=\"middle\">" << k.get_str() << "</text>\n";
        }
        for (mpz_class k = -((-t_lo).floor()); k <= t_hi.floor(); ++k) {
            Rational t{k, 1};
            out << "<line x1=\"" << kMargin - 4 << "\" y1=\"" << px_str(py(t)) << "\" x2=\""
                << kMargin << "\" y2=\"" << px_str(py(t)) << "\" stroke=\"#9ca3af\"/>\n";
            out << "<text x=\"" << kMargin - 8 << "\" y=\"" << px_str(py(t) + Rational(4))
                << "\" text-anchor=\"end\">" << k.get_str() << "</text>\n";
        }
        out << "</g>\n";
    }

    void band(const Rational& xa, const Rational& xb, const Rational& ta, const Rational& tb) {
        Rational cxa = max(xa, x_lo), cxb = min(xb, x_hi);
        Rational cta = max(ta, t_lo), ctb = min(tb, t_hi);
        if (!(cxb > cxa) || !(ctb > cta)) return;
        out << "<rect x=\"" << px_str(px(cxa)) << "\" y=\"" << px_str(py(ctb)) << "\" width=\""
            << px_str((cxb - cxa) * sx) << "\" height=\"" << px_str((ctb - cta) * sy)
            << "\" fill=\"#9ca3af\" fill-opacity=\"0.18\"/>\n";
    }

    void point(const Point& p) {
        const char* style = p.copy == 0 ? "fill=\"#2563eb\""
                                        : "fill=\"none\" stroke=\"#dc2626\" stroke-width=\"1.5\"";
        out << "<circle cx=\"" << px_str(px(p.x)) << "\" cy=\"" << px_str(py(p.t))
            << "\" r=\"3.5\" " << style << "/>\n";
    }

    void arrow(const Point& a, const Point& b) {
        if (a == b) {
            out << "<circle cx=\"" << px_str(px(a.x)) << "\" cy=\"" << px_str(py(a.t))
                << "\" r=\"7\" fill=\"none\" stroke=\"#374151\" stroke-width=\"1\"/>\n";
            return;
        }
        out << "<line x1=\"" << px_str(px(a.x)) << "\" y1=\"" << px_str(py(a.t)) << "\" x2=\""
            << px_str(px(b.x)) << "\" y2=\"" << px_str(py(b.t))
            << "\" stroke=\"#374151\" stroke-width=\"1\" marker-end=\"url(#arrow)\"/>\n";
    }

    std::string finish() {
        out << "</svg>\n";
        return out.str();
    }
};

void draw_module(Canvas& c, const GeoModule& m, const Window& w) {
    for (const auto& [p, rank] : m.materialize(w)) c.point(p);
}

void draw_morphism(Canvas& c, const GeoMorphism& f, const Window& w) {
    for (const auto& blk : f.materialize(w)) c.arrow(blk.from, blk.to);
    draw_module(c, f.source(), w);
    if (!(f.source() == f.target())) draw_module(c, f.target(), w);
}

} // namespace

std::string render_module_svg(const GeoModule& m, const Window& w) {
    Canvas c(w);
    c.axes();
    draw_module(c, m, w);
    return c.finish();
}

std::string render_morphism_svg(const GeoMorphism& f, const Window& w) {
    Canvas c(w);
    c.axes();
    draw_morphism(c, f, w);
    return c.finish();
}

std::string render_stack_svg(const Json& payload, const Window& w) {
    Canvas c(w);
    IntervalSpec I{rational_from(payload.at("interval_a"))};
    LayerSchedule sched(rational_from(payload.at("step")));
    int layers = payload.at("layers").get<int>();

    // shaded contraction bands, one per layer and visible cell
    for (int n = 1; n <= layers; ++n) {
        Rational tau = sched.tau(n);
        if (tau > w.t_hi) break;
        Rational half(1, 2 * static_cast<long>(n));
        for (mpz_class k = (w.x_lo - I.a - Rational(1)).floor();
             Rational(k, 1) + I.a <= w.x_hi; ++k) {
            Rational mid = I.a + Rational(k, 1) + Rational(1, 2);
            c.band(mid - half, mid + half, tau, w.t_hi);
        }
    }
    c.axes();

    if (payload.contains("layer_blocks"))
        for (const auto& b : payload.at("layer_blocks"))
            for (const auto& blk : morphism_from(b.at("morphism")).materialize(w))
                c.arrow(blk.from, blk.to);
    for (const auto& mj : payload.at("layer_modules"))
        draw_module(c, module_from(mj), w);
    return c.finish();
}

std::string render_document_svg(const Document& d, const Window& w) {
    if (d.kind == "module") return render_module_svg(module_from(d.payload), w);
    if (d.kind == "morphism") return render_morphism_svg(morphism_from(d.payload), w);
    if (d.kind == "report" && d.payload.contains("type") &&
        d.payload.at("type") == "squeezed-stack")
        return render_stack_svg(d.payload, w);
    throw UsageError("document kind '" + d.kind + "' is not renderable");
}

} // namespace ctrlk
