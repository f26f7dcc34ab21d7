#include "lipeq/svg.hpp"

#include <optional>

namespace lipeq {

namespace {

const Rational kScale(640);
const Rational kMargin(24);

std::string num(const Rational& q) { return to_decimal_string(q, 12); }

std::optional<Box> intersection(const Box& a, const Box& b) {
    Box out = a;
    for (int i = 0; i < a.dim(); ++i) {
        if (b.lower[i] > out.lower[i]) out.lower[i] = b.lower[i];
        if (b.upper[i] < out.upper[i]) out.upper[i] = b.upper[i];
        if (out.lower[i] >= out.upper[i]) return std::nullopt;  // empty or degenerate
    }
    return out;
}

class Doc {
public:
    void rect(const Rational& x, const Rational& y, const Rational& w, const Rational& h,
              const std::string& style) {
        body_ += "  <rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
                 "\" height=\"" + num(h) + "\" " + style + "/>\n";
    }
    void line(const Rational& x1, const Rational& y1, const Rational& x2, const Rational& y2) {
        body_ += "  <line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
                 "\" y2=\"" + num(y2) + "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
    }
    void text(const Rational& x, const Rational& y, const std::string& s,
              const std::string& extra = "text-anchor=\"middle\"") {
        body_ += "  <text x=\"" + num(x) + "\" y=\"" + num(y) +
                 "\" font-family=\"monospace\" font-size=\"13\" fill=\"#222222\" " + extra + ">" +
                 s + "</text>\n";
    }
    std::string finish(const Rational& width, const Rational& height) const {
        return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" "
               "version=\"1.1\" width=\"" +
               num(width) + "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
               num(height) + "\">\n" + body_ + "</svg>\n";
    }

private:
    std::string body_;
};

const char* kMapStyle = "fill=\"#7b9fd4\" fill-opacity=\"0.35\" stroke=\"#33507e\" stroke-width=\"1\"";
const char* kOverlapStyle = "fill=\"#d44a5a\" fill-opacity=\"0.85\" stroke=\"none\"";

// Returns the panel height consumed.
Rational draw_panel(Doc& doc, const SpecFile& spec, const Rational& top, char label_prefix,
                    const std::string& title) {
    const auto& ifs = spec.ifs;
    const int m = ifs.map_count();

    std::vector<Box> boxes;
    boxes.reserve(m);
    for (int i = 0; i < m; ++i) boxes.push_back(ifs.cylinder({i}));

    doc.text(kMargin, top + 16, title, "text-anchor=\"start\"");

    if (ifs.dim() == 1) {
        const Rational bar_y = top + 44;
        const Rational bar_h(36);
        doc.line(kMargin, bar_y + bar_h, kMargin + kScale, bar_y + bar_h);
        for (int i = 0; i < m; ++i) {
            const Box& b = boxes[i];
            doc.rect(kMargin + kScale * b.lower[0], bar_y, kScale * b.width(0), bar_h, kMapStyle);
        }
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (auto ov = intersection(boxes[i], boxes[j]))
                    doc.rect(kMargin + kScale * ov->lower[0], bar_y, kScale * ov->width(0), bar_h,
                             kOverlapStyle);
        for (int i = 0; i < m; ++i) {
            Rational mid = (boxes[i].lower[0] + boxes[i].upper[0]) / 2;
            doc.text(kMargin + kScale * mid, bar_y - 6,
                     std::string(1, label_prefix) + std::to_string(i + 1));
        }
        return Rational(104);
    }

    const Rational square_top = top + 28;
    auto sx = [&](const Rational& x) { return kMargin + kScale * x; };
    auto sy = [&](const Rational& y) { return square_top + kScale * (1 - y); };  // flip y up

    doc.rect(kMargin, square_top, kScale, kScale,
             "fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"");
    for (int i = 0; i < m; ++i) {
        const Box& b = boxes[i];
        doc.rect(sx(b.lower[0]), sy(b.upper[1]), kScale * b.width(0), kScale * b.width(1),
                 kMapStyle);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (auto ov = intersection(boxes[i], boxes[j]))
                doc.rect(sx(ov->lower[0]), sy(ov->upper[1]), kScale * ov->width(0),
                         kScale * ov->width(1), kOverlapStyle);
    for (int i = 0; i < m; ++i) {
        Rational cx = (boxes[i].lower[0] + boxes[i].upper[0]) / 2;
        Rational cy = (boxes[i].lower[1] + boxes[i].upper[1]) / 2;
        doc.text(sx(cx), sy(cy) + 4, std::string(1, label_prefix) + std::to_string(i + 1));
    }
    return kScale + 40;
}

}  // namespace

std::string render_svg(const SpecFile& a, const SpecFile* b) {
    Doc doc;
    Rational top(12);
    top += draw_panel(doc, a, top, 'f', "system 1") + 12;
    if (b) top += draw_panel(doc, *b, top, 'g', "system 2") + 12;
    return doc.finish(kMargin * 2 + kScale, top);
}

}  // namespace lipeq
