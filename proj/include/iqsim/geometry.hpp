#pragma once

#include <string>
#include <vector>

#include "iqsim/surface.hpp"

namespace iq {

enum class Species : uint8_t { Data, Ancilla };

struct AtomSite {
    int id;
    double x_um, y_um;
    Species species;
    int cluster_id;        // one cluster per site-grid position
    int pos_in_cluster;    // 0..k-1
};

struct Radii {
    double ancilla_data_um = 28.0;
    double data_data_um = 14.0;
};

// Physical model of an interleaved atom array. Site-grid coordinates follow
// the rotated-code fabric: data site (r,c) sits at (c-r, c+r)*G and the face
// ancilla (pr,pc) at (pc-pr, pc+pr-1)*G with G = spacing*sqrt(k), so every
// atom lands on a uniform grid of pitch spacing.
struct InterleavedLayout {
    int k = 1;
    int root_k = 1;
    double spacing_um = 10.0;
    Radii radii;
    std::vector<AtomSite> sites;

    // data cluster (r,c) position q -> site id; -1 when absent
    int data_site(int r, int c, int pos) const;
    int ancilla_site(int pr, int pc, int pos) const;
    const AtomSite& site(int id) const { return sites[size_t(id)]; }

    double block_pitch_um() const { return spacing_um * root_k; }

    std::string to_csv() const;  // site_id,x_um,y_um,species,cluster,pos

    // internal maps
    int data_r0 = 0, data_c0 = 0, data_rows = 0, data_cols = 0;
    std::vector<int> data_ids;               // (rows x cols x k)
    int face_r0 = 0, face_c0 = 0, face_rows = 0, face_cols = 0;
    std::vector<int> face_ids;               // (face_rows x face_cols x k)
};

// One stabilizer-round CZ (or transversal data-data CZ). `slot` is the leg
// index inside the round; gates of different slots never share a layer.
struct CzGate {
    int site_a, site_b;
    int slot;
    int cluster_id, pos;  // deterministic scheduling order key
};

// Layout for a single d x d patch: data clusters on the patch grid plus
// ancilla clusters for exactly the patch's face set.
InterleavedLayout build_layout(int k, int d, double spacing_um, Radii radii);

// Layout covering several patches plus extra (seam/gap) sites; used by the
// multi-patch experiment generators.
InterleavedLayout build_fabric(int k, double spacing_um, Radii radii,
                               int data_r0, int data_c0, int data_rows, int data_cols,
                               const std::vector<std::pair<int, int>>& data_sites,
                               const std::vector<std::pair<int, int>>& face_sites);

// Symmetric irreflexive conflict relation: gates conflict when an atom of one
// lies strictly inside the other's interaction disk (radius = the longer
// gate's leg length), or when they share an atom.
std::vector<std::pair<int, int>> rydberg_conflicts(const InterleavedLayout& layout,
                                                   const std::vector<CzGate>& gates);
bool gates_conflict(const InterleavedLayout& layout, const CzGate& a, const CzGate& b);

// Greedy first-fit coloring per slot, gates ordered by (cluster, pos).
// Returns layers of gate indices; all gates of slot s come before slot s+1.
std::vector<std::vector<int>> schedule_cz_layers(const InterleavedLayout& layout,
                                                 const std::vector<CzGate>& gates);

}  // namespace iq
