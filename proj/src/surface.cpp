#include "iqsim/surface.hpp"

#include <stdexcept>

namespace iq {

SurfacePatch SurfacePatch::make(int r0, int c0, int d) {
    if (d < 3 || d % 2 == 0) throw std::invalid_argument("patch distance must be odd and >= 3");
    SurfacePatch p;
    p.r0 = r0;
    p.c0 = c0;
    p.d = d;
    auto in = [&](int r, int c) { return p.contains(r, c); };
    for (int pr = r0; pr <= r0 + d; pr++) {
        for (int pc = c0; pc <= c0 + d; pc++) {
            Face f = make_face(pr, pc, in);
            int w = f.weight();
            if (w == 4) {
                p.faces.push_back(f);
            } else if (w == 2) {
                bool top_bottom = (pr == r0 || pr == r0 + d);
                bool keep = top_bottom ? !f.css_z : f.css_z;
                if (keep) p.faces.push_back(f);
            }
        }
    }
    if (int(p.faces.size()) != d * d - 1)
        throw std::logic_error("patch face count mismatch");
    return p;
}

std::vector<Coord> SurfacePatch::data_sites() const {
    std::vector<Coord> out;
    for (int r = r0; r < r0 + d; r++)
        for (int c = c0; c < c0 + d; c++) out.push_back({r, c});
    return out;
}

std::vector<Coord> SurfacePatch::z_row(int row) const {
    std::vector<Coord> out;
    for (int c = c0; c < c0 + d; c++) out.push_back({row, c});
    return out;
}

std::vector<Coord> SurfacePatch::x_col(int col) const {
    std::vector<Coord> out;
    for (int r = r0; r < r0 + d; r++) out.push_back({r, col});
    return out;
}

}  // namespace iq
