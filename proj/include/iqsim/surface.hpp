#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace iq {

// Faces and patches all live on one global fabric. Data site (r,c); face
// (pr,pc) touches data (pr-1,pc-1), (pr-1,pc), (pr,pc-1), (pr,pc). In the
// local-H analysis frame (H on data with even r+c) a face with odd pr+pc is
// a Z-product ("css_z") and an even face an X-product. Physically every face
// carries the same Z-X-X-Z leg pattern in scheduler order.
inline bool css_parity_even(int r, int c) { return ((r + c) & 1) == 0; }

using Coord = std::pair<int, int>;

struct Face {
    int pr, pc;
    bool css_z;
    // data legs in scheduler slot order; (-1,-1) when absent.
    // css_z faces visit nw,ne,sw,se; css_x faces nw,sw,ne,se. Both orders
    // run Z-leg, X-leg, X-leg, Z-leg and keep hook errors off the matching
    // logical direction.
    std::array<Coord, 4> legs;

    int weight() const {
        int w = 0;
        for (auto& l : legs) w += l.first >= 0;
        return w;
    }
};

// Builds the face at (pr,pc) keeping only legs for which `in_region` holds.
template <typename Pred>
Face make_face(int pr, int pc, Pred in_region) {
    Face f;
    f.pr = pr;
    f.pc = pc;
    f.css_z = ((pr + pc) & 1) != 0;
    Coord nw{pr - 1, pc - 1}, ne{pr - 1, pc}, sw{pr, pc - 1}, se{pr, pc};
    std::array<Coord, 4> order = f.css_z ? std::array<Coord, 4>{nw, ne, sw, se}
                                         : std::array<Coord, 4>{nw, sw, ne, se};
    for (int i = 0; i < 4; i++)
        f.legs[i] = in_region(order[i].first, order[i].second) ? order[i] : Coord{-1, -1};
    return f;
}

// A d x d rotated patch with data rows r0..r0+d-1, cols c0..c0+d-1.
// Boundary faces: top/bottom keep css_x faces, left/right keep css_z faces.
struct SurfacePatch {
    int r0 = 0, c0 = 0, d = 3;
    std::vector<Face> faces;

    static SurfacePatch make(int r0, int c0, int d);

    bool contains(int r, int c) const {
        return r >= r0 && r < r0 + d && c >= c0 && c < c0 + d;
    }
    std::vector<Coord> data_sites() const;
    std::vector<Coord> z_row(int row) const;  // logical Z representative
    std::vector<Coord> x_col(int col) const;  // logical X representative
};

}  // namespace iq
