#include "iqsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iq {

// Table 1 quotes rounded diagonals (14 for 10*sqrt(2), 28 for 40/sqrt(2)),
// so feasibility checks allow 2% slack.
static constexpr double kRadiusSlack = 1.02;

static int isqrt_exact(int k) {
    int r = int(std::lround(std::sqrt(double(k))));
    if (r * r != k) throw std::invalid_argument("group size k must be a perfect square");
    return r;
}

int InterleavedLayout::data_site(int r, int c, int pos) const {
    int rr = r - data_r0, cc = c - data_c0;
    if (rr < 0 || rr >= data_rows || cc < 0 || cc >= data_cols) return -1;
    return data_ids[(size_t(rr) * data_cols + cc) * k + pos];
}

int InterleavedLayout::ancilla_site(int pr, int pc, int pos) const {
    int rr = pr - face_r0, cc = pc - face_c0;
    if (rr < 0 || rr >= face_rows || cc < 0 || cc >= face_cols) return -1;
    return face_ids[(size_t(rr) * face_cols + cc) * k + pos];
}

std::string InterleavedLayout::to_csv() const {
    std::string out = "site_id,x_um,y_um,species,cluster,pos\n";
    char buf[160];
    for (const auto& s : sites) {
        snprintf(buf, sizeof buf, "%d,%.3f,%.3f,%s,%d,%d\n", s.id, s.x_um, s.y_um,
                 s.species == Species::Data ? "data" : "ancilla", s.cluster_id, s.pos_in_cluster);
        out += buf;
    }
    return out;
}

InterleavedLayout build_fabric(int k, double spacing_um, Radii radii,
                               int data_r0, int data_c0, int data_rows, int data_cols,
                               const std::vector<std::pair<int, int>>& data_sites,
                               const std::vector<std::pair<int, int>>& face_sites) {
    int root = isqrt_exact(k);
    InterleavedLayout L;
    L.k = k;
    L.root_k = root;
    L.spacing_um = spacing_um;
    L.radii = radii;
    L.data_r0 = data_r0;
    L.data_c0 = data_c0;
    L.data_rows = data_rows;
    L.data_cols = data_cols;

    double G = L.block_pitch_um();
    int cluster = 0;
    auto add_cluster = [&](double cx, double cy, Species sp, std::vector<int>& ids, size_t base) {
        for (int pos = 0; pos < k; pos++) {
            double ox = ((pos % root) - (root - 1) / 2.0) * spacing_um;
            double oy = ((pos / root) - (root - 1) / 2.0) * spacing_um;
            int id = int(L.sites.size());
            L.sites.push_back({id, cx + ox, cy + oy, sp, cluster, pos});
            ids[base + pos] = id;
        }
        cluster++;
    };

    L.data_ids.assign(size_t(data_rows) * data_cols * k, -1);
    for (auto [r, c] : data_sites) {
        size_t base = (size_t(r - data_r0) * data_cols + (c - data_c0)) * k;
        add_cluster((c - r) * G, (c + r) * G, Species::Data, L.data_ids, base);
    }

    int pr_min = data_r0, pr_max = data_r0 + data_rows, pc_min = data_c0, pc_max = data_c0 + data_cols;
    for (auto [pr, pc] : face_sites) {
        pr_min = std::min(pr_min, pr); pr_max = std::max(pr_max, pr);
        pc_min = std::min(pc_min, pc); pc_max = std::max(pc_max, pc);
    }
    L.face_r0 = pr_min;
    L.face_c0 = pc_min;
    L.face_rows = pr_max - pr_min + 1;
    L.face_cols = pc_max - pc_min + 1;
    L.face_ids.assign(size_t(L.face_rows) * L.face_cols * k, -1);
    for (auto [pr, pc] : face_sites) {
        size_t base = (size_t(pr - L.face_r0) * L.face_cols + (pc - L.face_c0)) * k;
        add_cluster((pc - pr) * G, (pc + pr - 1) * G, Species::Ancilla, L.face_ids, base);
    }

    // stabilizer legs run between same-position atoms of diagonal blocks,
    // length G; reject radii that cannot support them
    if (G > radii.ancilla_data_um * kRadiusSlack)
        throw std::invalid_argument(
            "infeasible layout: ancilla-data radius " + std::to_string(radii.ancilla_data_um) +
            " um cannot reach stabilizer legs of " + std::to_string(G) + " um (ancilla cannot reach all cluster members)");
    if (k > 1 && spacing_um > radii.data_data_um * kRadiusSlack)
        throw std::invalid_argument(
            "infeasible layout: data-data radius cannot span neighboring cluster members");
    return L;
}

InterleavedLayout build_layout(int k, int d, double spacing_um, Radii radii) {
    if (d < 3 || d % 2 == 0) throw std::invalid_argument("distance must be odd and >= 3");
    SurfacePatch p = SurfacePatch::make(0, 0, d);
    std::vector<std::pair<int, int>> faces;
    for (const auto& f : p.faces) faces.push_back({f.pr, f.pc});
    return build_fabric(k, spacing_um, radii, 0, 0, d, d, p.data_sites(), faces);
}

static double leg_len(const InterleavedLayout& L, const CzGate& g) {
    const auto& a = L.site(g.site_a);
    const auto& b = L.site(g.site_b);
    return std::hypot(a.x_um - b.x_um, a.y_um - b.y_um);
}

bool gates_conflict(const InterleavedLayout& L, const CzGate& a, const CzGate& b) {
    if (a.site_a == b.site_a || a.site_a == b.site_b || a.site_b == b.site_a ||
        a.site_b == b.site_b)
        return true;
    double r = std::max(leg_len(L, a), leg_len(L, b));
    double r2 = r * r;
    for (int sa : {a.site_a, a.site_b}) {
        for (int sb : {b.site_a, b.site_b}) {
            const auto& pa = L.site(sa);
            const auto& pb = L.site(sb);
            double dx = pa.x_um - pb.x_um, dy = pa.y_um - pb.y_um;
            if (dx * dx + dy * dy < r2 * (1.0 - 1e-12)) return true;
        }
    }
    return false;
}

std::vector<std::pair<int, int>> rydberg_conflicts(const InterleavedLayout& L,
                                                   const std::vector<CzGate>& gates) {
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < gates.size(); i++)
        for (size_t j = i + 1; j < gates.size(); j++)
            if (gates_conflict(L, gates[i], gates[j])) out.push_back({int(i), int(j)});
    return out;
}

std::vector<std::vector<int>> schedule_cz_layers(const InterleavedLayout& L,
                                                 const std::vector<CzGate>& gates) {
    int max_slot = 0;
    for (const auto& g : gates) max_slot = std::max(max_slot, g.slot);

    std::vector<std::vector<int>> layers;
    for (int slot = 0; slot <= max_slot; slot++) {
        std::vector<int> idx;
        for (size_t i = 0; i < gates.size(); i++)
            if (gates[i].slot == slot) idx.push_back(int(i));
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            return std::tie(gates[a].cluster_id, gates[a].pos) <
                   std::tie(gates[b].cluster_id, gates[b].pos);
        });
        std::vector<std::vector<int>> slot_layers;
        for (int gi : idx) {
            bool placed = false;
            for (auto& layer : slot_layers) {
                bool ok = true;
                for (int other : layer)
                    if (gates_conflict(L, gates[gi], gates[other])) { ok = false; break; }
                if (ok) { layer.push_back(gi); placed = true; break; }
            }
            if (!placed) slot_layers.push_back({gi});
        }
        for (auto& l : slot_layers) layers.push_back(std::move(l));
    }
    return layers;
}

}  // namespace iq
