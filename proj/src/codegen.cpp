#include "iqsim/codegen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

namespace iq {

namespace {

using Key = std::tuple<int, int, int>;  // face: (pr,pc,anc_pos); data: (r,c,pos)

struct FaceInst {
    Face face;
    int leg_pos;  // cluster position of all data legs
    int anc_pos;
    Key key() const { return {face.pr, face.pc, anc_pos}; }
};

char css_basis(const Face& f) { return f.css_z ? 'Z' : 'X'; }

// CSS-frame basis ops compiled for the physical code: the analysis frame
// applies H on even-parity data sites, so even sites swap their role.
bool prep_needs_h(int r, int c, char basis) {
    bool even = css_parity_even(r, c);
    return basis == 'Z' ? even : !even;
}
Op meas_op(int r, int c, char basis) {
    bool even = css_parity_even(r, c);
    if (basis == 'Z') return even ? Op::MX : Op::MZ;
    return even ? Op::MZ : Op::MX;
}

struct PrepInfo { int event; char basis; };
struct ReadoutInfo { int event; char basis; int rec; };
struct FaceHistory {
    int rec = -1;
    int event = -1;
    std::set<Key> legs;
};

class FabricBuilder {
public:
    FabricBuilder(InterleavedLayout layout, TimingInfo timing)
        : L_(std::move(layout)), t_(timing) {}

    const InterleavedLayout& layout() const { return L_; }

    int data_qubit(int r, int c, int pos) {
        int site = L_.data_site(r, c, pos);
        if (site < 0) throw std::logic_error("data site missing from layout");
        return qubit_for_site(site);
    }
    int ancilla_qubit(int pr, int pc, int pos) {
        int site = L_.ancilla_site(pr, pc, pos);
        if (site < 0) throw std::logic_error("ancilla site missing from layout");
        return qubit_for_site(site);
    }

    void tick(double dur) { c_.append(Op::TICK, {}, {dur}); }

    void prep_css(const std::vector<Coord>& sites, int pos, char basis) {
        event_++;
        std::vector<int32_t> all, hs;
        for (auto [r, c] : sites) {
            int q = data_qubit(r, c, pos);
            all.push_back(q);
            if (prep_needs_h(r, c, basis)) hs.push_back(q);
            prep_[{r, c, pos}] = {event_, basis};
            active_data_.insert(q);
        }
        std::sort(all.begin(), all.end());
        std::sort(hs.begin(), hs.end());
        c_.append(Op::RESET, all);
        if (!hs.empty()) c_.append(Op::H, hs);
    }

    // physical representative of logical X (column chain) / Z (row chain)
    void apply_logical_x(const SurfacePatch& p, int pos) {
        std::vector<int32_t> xs, zs;
        for (auto [r, c] : p.x_col(p.c0)) {
            int q = data_qubit(r, c, pos);
            (css_parity_even(r, c) ? zs : xs).push_back(q);
        }
        if (!xs.empty()) c_.append(Op::X, xs);
        if (!zs.empty()) c_.append(Op::Z, zs);
    }
    void apply_logical_z(const SurfacePatch& p, int pos) {
        std::vector<int32_t> xs, zs;
        for (auto [r, c] : p.z_row(p.r0)) {
            int q = data_qubit(r, c, pos);
            (css_parity_even(r, c) ? xs : zs).push_back(q);
        }
        if (!xs.empty()) c_.append(Op::X, xs);
        if (!zs.empty()) c_.append(Op::Z, zs);
    }

    void add_pending_extra(const Key& k, int rec) { pending_[k].push_back(rec); }
    int last_rec(const Key& k) const {
        auto it = hist_.find(k);
        return it == hist_.end() ? -1 : it->second.rec;
    }

    struct ExtraMeas { std::vector<Coord> sites; int pos; char basis; };

    // One stabilizer round over `faces`. Optional direct data readouts share
    // the round's measurement window (used by merge splits).
    void round(const std::vector<FaceInst>& faces, const std::vector<ExtraMeas>& extra = {}) {
        event_++;
        // ancilla qubits, sorted for deterministic measurement order
        std::vector<std::pair<int, size_t>> anc;  // (qubit, face index)
        for (size_t i = 0; i < faces.size(); i++) {
            const auto& fi = faces[i];
            anc.push_back({ancilla_qubit(fi.face.pr, fi.face.pc, fi.anc_pos), i});
        }
        std::sort(anc.begin(), anc.end());
        std::vector<int32_t> anc_qubits;
        for (auto& [q, i] : anc) anc_qubits.push_back(q);

        c_.append(Op::RESET, anc_qubits);
        c_.append(Op::H, anc_qubits);
        tick(t_.t_1q_us);

        // CZ gates, slot-tagged for the scheduler
        std::vector<CzGate> gates;
        std::vector<std::pair<int32_t, int32_t>> gate_qubits;
        for (const auto& fi : faces) {
            int anc_site = L_.ancilla_site(fi.face.pr, fi.face.pc, fi.anc_pos);
            int anc_q = qubit_for_site(anc_site);
            for (int slot = 0; slot < 4; slot++) {
                auto [lr, lc] = fi.face.legs[slot];
                if (lr < 0) continue;
                int dsite = L_.data_site(lr, lc, fi.leg_pos);
                gates.push_back({anc_site, dsite, slot, L_.site(anc_site).cluster_id, fi.anc_pos});
                gate_qubits.push_back({anc_q, qubit_for_site(dsite)});
            }
        }
        auto layers = schedule_cz_layers(L_, gates);
        // layer structure: [H anc] slot0.. [H data] slot1 slot2 [H data] slot3 [MX]
        int czl = 0, oneql = 1;
        auto data_h_layer = [&] {
            std::vector<int32_t> dq(active_data_.begin(), active_data_.end());
            if (!dq.empty()) {
                c_.append(Op::H, dq);
                tick(t_.t_1q_us);
                oneql++;
            }
        };
        int emitted_slot_blocks = 0;
        for (size_t li = 0; li < layers.size(); li++) {
            int slot = gates[layers[li][0]].slot;
            while (emitted_slot_blocks < slot) {
                if (emitted_slot_blocks == 0 || emitted_slot_blocks == 2) data_h_layer();
                emitted_slot_blocks++;
            }
            for (int gi : layers[li]) c_.append(Op::CZ, {gate_qubits[gi].first, gate_qubits[gi].second});
            tick(t_.t_2q_us);
            czl++;
        }
        while (emitted_slot_blocks < 3) {
            if (emitted_slot_blocks == 0 || emitted_slot_blocks == 2) data_h_layer();
            emitted_slot_blocks++;
        }

        last_round_cz_layers_ = czl;
        last_round_1q_layers_ = oneql;

        // measurement window: face MX, then any extra direct data readouts
        c_.append(Op::MX, anc_qubits);
        std::vector<std::pair<Key, int>> face_rec(faces.size());
        for (auto& [q, i] : anc) face_rec[i] = {faces[i].key(), meas_count_++};

        for (const auto& em : extra) do_measure_css(em.sites, em.pos, em.basis);
        tick(t_.t_meas_us);

        // detectors
        for (size_t i = 0; i < faces.size(); i++) {
            const auto& fi = faces[i];
            int cur = face_rec[i].second;
            std::set<Key> legs;
            for (auto [lr, lc] : fi.face.legs)
                if (lr >= 0) legs.insert({lr, lc, fi.leg_pos});
            emit_face_detector(fi, cur, legs);
            auto& h = hist_[fi.key()];
            h.rec = cur;
            h.event = event_;
            h.legs = std::move(legs);
        }
    }

    // Transversal CNOT between congruent patches at two positions.
    void transversal_cnot(const SurfacePatch& p, int pos_c, int pos_t) {
        event_++;
        std::vector<int32_t> hset;
        std::vector<std::pair<int32_t, int32_t>> pairs;
        std::vector<CzGate> gates;
        for (auto [r, c] : p.data_sites()) {
            int qc = data_qubit(r, c, pos_c);
            int qt = data_qubit(r, c, pos_t);
            hset.push_back(css_parity_even(r, c) ? qc : qt);
            pairs.push_back({qc, qt});
            int sc = L_.data_site(r, c, pos_c), st = L_.data_site(r, c, pos_t);
            gates.push_back({sc, st, 0, L_.site(sc).cluster_id, pos_c});
        }
        std::sort(hset.begin(), hset.end());
        c_.append(Op::H, hset);
        tick(t_.t_1q_us);
        auto layers = schedule_cz_layers(L_, gates);
        cnot_cz_layers_ = int(layers.size());
        for (auto& layer : layers) {
            for (int gi : layer) c_.append(Op::CZ, {pairs[gi].first, pairs[gi].second});
            tick(t_.t_2q_us);
        }
        c_.append(Op::H, hset);
        tick(t_.t_1q_us);

        // stabilizer propagation: control X-faces pick up the target copy,
        // target Z-faces pick up the control copy
        for (const auto& f : p.faces) {
            Key kc{f.pr, f.pc, pos_c}, kt{f.pr, f.pc, pos_t};
            if (!f.css_z) add_pending_extra(kc, last_rec(kt));
            else add_pending_extra(kt, last_rec(kc));
        }
    }

    void begin_final_readout() { event_++; }
    void measure_data_css(const std::vector<Coord>& sites, int pos, char basis) {
        do_measure_css(sites, pos, basis);
    }
    void end_final_readout() { tick(t_.t_meas_us); }

    // SWAP each data atom onto a helper ancilla (3 alternating CX compiled to
    // H-CZ-H), then read the helper in the data qubit's CSS basis.
    void swap_measure_css(const std::vector<Coord>& sites, int pos, char basis,
                          const std::vector<int>& helper_sites) {
        if (helper_sites.size() < sites.size())
            throw std::invalid_argument("not enough helper ancillas for swap readout");
        // nearest-helper assignment, deterministic
        std::vector<int> avail = helper_sites;
        std::vector<std::pair<Coord, int>> assign;
        for (auto rc : sites) {
            int dsite = L_.data_site(rc.first, rc.second, pos);
            const auto& ds = L_.site(dsite);
            double best = 1e300;
            size_t best_i = 0;
            for (size_t i = 0; i < avail.size(); i++) {
                const auto& hs = L_.site(avail[i]);
                double d2 = std::hypot(ds.x_um - hs.x_um, ds.y_um - hs.y_um);
                if (d2 < best - 1e-12) { best = d2; best_i = i; }
            }
            assign.push_back({rc, avail[best_i]});
            avail.erase(avail.begin() + best_i);
        }
        std::vector<int32_t> dq, hq;
        for (auto& [rc, hsite] : assign) {
            dq.push_back(data_qubit(rc.first, rc.second, pos));
            hq.push_back(qubit_for_site(hsite));
        }
        c_.append(Op::RESET, hq);
        auto cz_layer = [&] {
            std::vector<CzGate> gates;
            for (auto& [rc, hsite] : assign) {
                int dsite = L_.data_site(rc.first, rc.second, pos);
                gates.push_back({dsite, hsite, 0, L_.site(hsite).cluster_id, pos});
            }
            auto layers = schedule_cz_layers(L_, gates);
            for (auto& layer : layers) {
                for (int gi : layer) c_.append(Op::CZ, {dq[gi], hq[gi]});
                tick(t_.t_2q_us);
            }
        };
        auto h_layer = [&](std::vector<int32_t> qs) {
            std::sort(qs.begin(), qs.end());
            c_.append(Op::H, qs);
            tick(t_.t_1q_us);
        };
        h_layer(hq); cz_layer(); h_layer(hq);   // CX data->helper
        h_layer(dq); cz_layer(); h_layer(dq);   // CX helper->data
        h_layer(hq); cz_layer(); h_layer(hq);   // CX data->helper
        // helper now carries the data state; read it in the data's CSS basis
        event_++;
        std::vector<std::pair<int32_t, size_t>> order;
        for (size_t i = 0; i < assign.size(); i++) order.push_back({hq[i], i});
        std::sort(order.begin(), order.end());
        // measurement order must match record order: emit per-qubit in sorted order
        for (auto& [q, i] : order) {
            auto [r, c] = assign[i].first;
            c_.append(meas_op(r, c, basis), {q});
            readout_[{r, c, pos}] = {event_, basis, meas_count_++};
            active_data_.erase(data_qubit(r, c, pos));
        }
    }

    // Closure detectors: faces whose legs all have final readouts in the
    // face's own CSS basis compare their last outcome against those readouts.
    void close_faces(const std::vector<FaceInst>& faces) {
        for (const auto& fi : faces) {
            auto it = hist_.find(fi.key());
            if (it == hist_.end()) continue;
            std::vector<int> terms{it->second.rec};
            bool ok = true;
            for (auto [lr, lc] : fi.face.legs) {
                if (lr < 0) continue;
                auto rd = readout_.find({lr, lc, fi.leg_pos});
                if (rd == readout_.end() || rd->second.basis != css_basis(fi.face) ||
                    rd->second.event < it->second.event) { ok = false; break; }
                terms.push_back(rd->second.rec);
            }
            if (ok) emit_detector(terms);
        }
    }

    int readout_rec(int r, int c, int pos) const {
        auto it = readout_.find({r, c, pos});
        if (it == readout_.end()) throw std::logic_error("missing data readout");
        return it->second.rec;
    }

    void emit_detector(const std::vector<int>& abs_recs) {
        std::vector<int32_t> offs;
        for (int r : abs_recs) offs.push_back(int32_t(r - meas_count_));
        c_.append(Op::DETECTOR, offs);
    }
    void emit_observable(int id, const std::vector<int>& abs_recs) {
        std::vector<int32_t> offs;
        for (int r : abs_recs) offs.push_back(int32_t(r - meas_count_));
        c_.append(Op::OBSERVABLE, offs, {double(id)});
    }

    Circuit take() {
        c_.n_qubits = next_qubit_;
        for (auto& [site, q] : qubit_of_site_) c_.site_of_qubit[q] = site;
        c_.validate();
        return std::move(c_);
    }

    int last_round_cz_layers_ = 0;
    int last_round_1q_layers_ = 0;
    int cnot_cz_layers_ = 0;

private:
    int qubit_for_site(int site) {
        auto [it, fresh] = qubit_of_site_.insert({site, next_qubit_});
        if (fresh) next_qubit_++;
        return it->second;
    }

    void do_measure_css(const std::vector<Coord>& sites, int pos, char basis) {
        std::vector<std::pair<int32_t, Coord>> order;
        for (auto rc : sites) order.push_back({data_qubit(rc.first, rc.second, pos), rc});
        std::sort(order.begin(), order.end());
        for (auto& [q, rc] : order) {
            c_.append(meas_op(rc.first, rc.second, basis), {q});
            readout_[{rc.first, rc.second, pos}] = {event_, basis, meas_count_++};
            active_data_.erase(q);
        }
    }

    void emit_face_detector(const FaceInst& fi, int cur, const std::set<Key>& legs) {
        std::vector<int> terms{cur};
        bool valid = true;
        auto it = hist_.find(fi.key());
        char basis = css_basis(fi.face);
        if (it != hist_.end()) {
            terms.push_back(it->second.rec);
            for (const auto& leg : legs) {
                if (it->second.legs.count(leg)) continue;  // unchanged
                auto pe = prep_.find(leg);
                if (pe == prep_.end() || pe->second.event <= it->second.event ||
                    pe->second.basis != basis) { valid = false; break; }
            }
            if (valid) {
                for (const auto& leg : it->second.legs) {
                    if (legs.count(leg)) continue;  // removed leg needs a readout
                    auto rd = readout_.find(leg);
                    if (rd == readout_.end() || rd->second.event < it->second.event ||
                        rd->second.basis != basis) { valid = false; break; }
                    terms.push_back(rd->second.rec);
                }
            }
        } else {
            for (const auto& leg : legs) {
                auto pe = prep_.find(leg);
                if (pe == prep_.end() || pe->second.basis != basis) { valid = false; break; }
            }
        }
        auto pend = pending_.find(fi.key());
        if (pend != pending_.end()) {
            for (int r : pend->second) terms.push_back(r);
            pending_.erase(pend);
        }
        if (valid) emit_detector(terms);
    }

    InterleavedLayout L_;
    TimingInfo t_;
    Circuit c_;
    int next_qubit_ = 0;
    int meas_count_ = 0;
    int event_ = 0;
    std::map<int, int> qubit_of_site_;
    std::set<int> active_data_;
    std::map<Key, PrepInfo> prep_;
    std::map<Key, ReadoutInfo> readout_;
    std::map<Key, FaceHistory> hist_;
    std::map<Key, std::vector<int>> pending_;
};

std::vector<FaceInst> patch_faces(const SurfacePatch& p, int pos) {
    std::vector<FaceInst> out;
    for (const auto& f : p.faces) out.push_back({f, pos, pos});
    return out;
}

char state_basis(LogicalState s) { return is_x_basis(s) ? 'X' : 'Z'; }

void prep_patch(FabricBuilder& b, const SurfacePatch& p, int pos, LogicalState st) {
    b.prep_css(p.data_sites(), pos, state_basis(st));
    if (st == LogicalState::One) b.apply_logical_x(p, pos);
    if (st == LogicalState::Minus) b.apply_logical_z(p, pos);
}

std::vector<int> row_readout_recs(FabricBuilder& b, const SurfacePatch& p, int pos, int row) {
    std::vector<int> recs;
    for (auto [r, c] : p.z_row(row)) recs.push_back(b.readout_rec(r, c, pos));
    return recs;
}
std::vector<int> col_readout_recs(FabricBuilder& b, const SurfacePatch& p, int pos, int col) {
    std::vector<int> recs;
    for (auto [r, c] : p.x_col(col)) recs.push_back(b.readout_rec(r, c, pos));
    return recs;
}

}  // namespace

GeneratedExperiment gen_memory(const MemoryOptions& opt) {
    if (opt.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    InterleavedLayout L = build_layout(opt.k, opt.d, opt.spacing_um, opt.radii);
    FabricBuilder b(L, opt.timing);
    SurfacePatch p = SurfacePatch::make(0, 0, opt.d);

    std::vector<FaceInst> faces;
    for (int pos = 0; pos < opt.k; pos++) {
        prep_patch(b, p, pos, opt.state);
        auto f = patch_faces(p, pos);
        faces.insert(faces.end(), f.begin(), f.end());
    }
    b.tick(opt.timing.t_1q_us);

    GeneratedExperiment out;
    for (int r = 0; r < opt.rounds; r++) {
        b.round(faces);
        if (r == 0) {
            out.cz_layers_per_round = b.last_round_cz_layers_;
            out.oneq_layers_per_round = b.last_round_1q_layers_;
        }
    }
    char basis = state_basis(opt.state);
    b.begin_final_readout();
    for (int pos = 0; pos < opt.k; pos++) b.measure_data_css(p.data_sites(), pos, basis);
    b.end_final_readout();
    b.close_faces(faces);
    for (int pos = 0; pos < opt.k; pos++) {
        std::vector<int> recs = basis == 'Z' ? row_readout_recs(b, p, pos, 0)
                                             : col_readout_recs(b, p, pos, 0);
        b.emit_observable(pos, recs);
    }

    out.circuit = b.take();
    out.layout = std::move(L);
    out.n_patches = opt.k;
    out.round_duration_us = out.cz_layers_per_round * opt.timing.t_2q_us +
                            out.oneq_layers_per_round * opt.timing.t_1q_us + opt.timing.t_meas_us;
    return out;
}

GeneratedExperiment gen_transversal_cnot_experiment(const CnotOptions& opt) {
    if (opt.k < 2) throw std::invalid_argument("transversal CNOT needs k >= 2");
    bool cx = is_x_basis(opt.control), tx = is_x_basis(opt.target);
    if (cx && !tx)
        throw std::invalid_argument("control X-basis with target Z-basis has no deterministic joint readout");

    InterleavedLayout L = build_layout(opt.k, opt.d, opt.spacing_um, opt.radii);
    FabricBuilder b(L, opt.timing);
    SurfacePatch p = SurfacePatch::make(0, 0, opt.d);
    const int pos_c = 0, pos_t = 1;

    prep_patch(b, p, pos_c, opt.control);
    prep_patch(b, p, pos_t, opt.target);
    b.tick(opt.timing.t_1q_us);

    std::vector<FaceInst> faces = patch_faces(p, pos_c);
    auto ft = patch_faces(p, pos_t);
    faces.insert(faces.end(), ft.begin(), ft.end());

    GeneratedExperiment out;
    for (int r = 0; r < opt.d; r++) {
        b.round(faces);
        if (r == 0) {
            out.cz_layers_per_round = b.last_round_cz_layers_;
            out.oneq_layers_per_round = b.last_round_1q_layers_;
        }
    }
    b.transversal_cnot(p, pos_c, pos_t);
    for (int r = 0; r < opt.d; r++) b.round(faces);

    char rb_c = cx ? 'X' : 'Z', rb_t = tx ? 'X' : 'Z';
    b.begin_final_readout();
    b.measure_data_css(p.data_sites(), pos_c, rb_c);
    b.measure_data_css(p.data_sites(), pos_t, rb_t);
    b.end_final_readout();
    b.close_faces(faces);

    // observables: single-sided logical readouts (the gate is unitary)
    b.emit_observable(0, rb_c == 'Z' ? row_readout_recs(b, p, pos_c, 0)
                                     : col_readout_recs(b, p, pos_c, 0));
    b.emit_observable(1, rb_t == 'X' ? col_readout_recs(b, p, pos_t, 0)
                                     : row_readout_recs(b, p, pos_t, 0));

    out.circuit = b.take();
    out.layout = std::move(L);
    out.n_patches = 2;
    out.round_duration_us = out.cz_layers_per_round * opt.timing.t_2q_us +
                            out.oneq_layers_per_round * opt.timing.t_1q_us + opt.timing.t_meas_us;
    return out;
}

std::vector<SeamFace> merge_seam_faces(int d, int r0a, int c0a, char basis, int pos_a, int pos_b) {
    // basis 'Z': patch A above at (r0a,c0a), patch B below at (r0a+d+1,c0a);
    // basis 'X': A left, B right at (r0a, c0a+d+1). Gap row/col between.
    std::vector<SeamFace> out;
    bool vertical = basis == 'Z';
    int g = vertical ? r0a + d : c0a + d;  // gap row or column

    auto region = [&](int pos) {
        return [=](int r, int c) {
            if (vertical) {
                if (c < c0a || c >= c0a + d) return false;
                if (r == g) return true;                       // gap row
                if (pos == 0) return r >= r0a && r < r0a + d;  // A side
                return r >= g + 1 && r < g + 1 + d;            // B side
            }
            if (r < r0a || r >= r0a + d) return false;
            if (c == g) return true;
            if (pos == 0) return c >= c0a && c < c0a + d;
            return c >= g + 1 && c < g + 1 + d;
        };
    };

    for (int side = 0; side < 2; side++) {
        int pos = side == 0 ? pos_a : pos_b;
        int line = g + side;  // face row (vertical) or face col (horizontal)
        for (int t = (vertical ? c0a : r0a); t <= (vertical ? c0a + d : r0a + d); t++) {
            int pr = vertical ? line : t;
            int pc = vertical ? t : line;
            Face f = make_face(pr, pc, region(side));
            int w = f.weight();
            bool keep = w == 4;
            if (w == 2) {
                // the merged patch keeps the usual boundary rule:
                // left/right faces css_z, top/bottom faces css_x
                if (vertical) keep = (pc == c0a || pc == c0a + d) && f.css_z;
                else keep = (pr == r0a || pr == r0a + d) && !f.css_z;
            }
            if (!keep) continue;
            bool is_new = vertical ? f.css_z : !f.css_z;
            out.push_back({f, pos, is_new});
        }
    }
    return out;
}

GeneratedExperiment gen_lattice_surgery_cnot_experiment(const CnotOptions& opt) {
    bool cxb = is_x_basis(opt.control), txb = is_x_basis(opt.target);
    if (cxb && !txb)
        throw std::invalid_argument("control X-basis with target Z-basis has no deterministic joint readout");
    const int d = opt.d;
    SurfacePatch C = SurfacePatch::make(0, 0, d);
    SurfacePatch A = SurfacePatch::make(d + 1, 0, d);
    SurfacePatch T = SurfacePatch::make(d + 1, d + 1, d);

    // data sites: three patches + the two gap strips
    std::vector<Coord> data = C.data_sites();
    for (auto rc : A.data_sites()) data.push_back(rc);
    for (auto rc : T.data_sites()) data.push_back(rc);
    std::vector<Coord> gap_row, gap_col;
    for (int c = 0; c < d; c++) gap_row.push_back({d, c});
    for (int r = d + 1; r < 2 * d + 1; r++) gap_col.push_back({r, d});
    for (auto rc : gap_row) data.push_back(rc);
    for (auto rc : gap_col) data.push_back(rc);

    auto seam_zz = merge_seam_faces(d, 0, 0, 'Z', 0, 0);
    auto seam_xx = merge_seam_faces(d, d + 1, 0, 'X', 0, 0);

    std::set<std::pair<int, int>> face_set;
    for (const auto* patch : {&C, &A, &T})
        for (const auto& f : patch->faces) face_set.insert({f.pr, f.pc});
    for (const auto& sf : seam_zz) face_set.insert({sf.face.pr, sf.face.pc});
    for (const auto& sf : seam_xx) face_set.insert({sf.face.pr, sf.face.pc});

    InterleavedLayout L = build_fabric(
        1, opt.spacing_um, opt.radii, 0, 0, 2 * d + 1, 2 * d + 1, data,
        std::vector<std::pair<int, int>>(face_set.begin(), face_set.end()));
    FabricBuilder b(L, opt.timing);

    prep_patch(b, C, 0, opt.control);
    prep_patch(b, A, 0, LogicalState::Plus);
    prep_patch(b, T, 0, opt.target);
    b.tick(opt.timing.t_1q_us);

    auto fC = patch_faces(C, 0), fA = patch_faces(A, 0), fT = patch_faces(T, 0);
    auto by_key_not_in = [](const std::vector<FaceInst>& v, const std::vector<SeamFace>& seam) {
        std::vector<FaceInst> out;
        for (const auto& fi : v) {
            bool replaced = false;
            for (const auto& sf : seam)
                if (sf.face.pr == fi.face.pr && sf.face.pc == fi.face.pc) replaced = true;
            if (!replaced) out.push_back(fi);
        }
        return out;
    };

    std::vector<FaceInst> sep = fC;
    sep.insert(sep.end(), fA.begin(), fA.end());
    sep.insert(sep.end(), fT.begin(), fT.end());

    GeneratedExperiment out;
    for (int r = 0; r < d; r++) {
        b.round(sep);
        if (r == 0) {
            out.cz_layers_per_round = b.last_round_cz_layers_;
            out.oneq_layers_per_round = b.last_round_1q_layers_;
        }
    }

    // ---- MZZ merge: C with A through the gap row ----
    b.prep_css(gap_row, 0, 'X');
    b.tick(opt.timing.t_1q_us);
    std::vector<FaceInst> merged1 = by_key_not_in(fC, seam_zz);
    auto fA1 = by_key_not_in(fA, seam_zz);
    merged1.insert(merged1.end(), fA1.begin(), fA1.end());
    for (const auto& sf : seam_zz) merged1.push_back({sf.face, sf.anc_pos, sf.anc_pos});
    merged1.insert(merged1.end(), fT.begin(), fT.end());

    std::vector<int> m1_recs;
    for (int r = 0; r < d; r++) {
        if (r == d - 1) {
            // split: gap row read out in the X frame inside the same window
            b.round(merged1, {{gap_row, 0, 'X'}});
        } else {
            b.round(merged1);
        }
        if (r == 0)
            for (const auto& sf : seam_zz)
                if (sf.is_new) m1_recs.push_back(b.last_rec({sf.face.pr, sf.face.pc, sf.anc_pos}));
    }

    // ---- MXX merge: A with T through the gap column ----
    b.prep_css(gap_col, 0, 'Z');
    b.tick(opt.timing.t_1q_us);
    std::vector<FaceInst> merged2 = by_key_not_in(fA, seam_xx);
    auto fT2 = by_key_not_in(fT, seam_xx);
    merged2.insert(merged2.end(), fT2.begin(), fT2.end());
    for (const auto& sf : seam_xx) merged2.push_back({sf.face, sf.anc_pos, sf.anc_pos});
    merged2.insert(merged2.end(), fC.begin(), fC.end());

    std::vector<int> m2_recs;
    for (int r = 0; r < d; r++) {
        b.round(merged2);
        if (r == 0)
            for (const auto& sf : seam_xx)
                if (sf.is_new) m2_recs.push_back(b.last_rec({sf.face.pr, sf.face.pc, sf.anc_pos}));
    }

    // ---- readout ----
    char rb_c = cxb ? 'X' : 'Z', rb_t = txb ? 'X' : 'Z';
    b.begin_final_readout();
    b.measure_data_css(C.data_sites(), 0, rb_c);
    b.measure_data_css(T.data_sites(), 0, rb_t);
    b.measure_data_css(gap_col, 0, 'Z');
    // ancilla-patch logical readout via swap onto retired ancillas
    std::vector<int> helpers;
    for (const auto& f : A.faces) helpers.push_back(L.ancilla_site(f.pr, f.pc, 0));
    helpers.push_back(L.ancilla_site(d, 0, 0));  // borrow one retired seam ancilla
    b.swap_measure_css(A.data_sites(), 0, 'Z', helpers);
    b.end_final_readout();

    std::vector<FaceInst> closing = fC;
    closing.insert(closing.end(), fT.begin(), fT.end());
    closing.insert(closing.end(), fA.begin(), fA.end());
    for (const auto& sf : seam_xx) closing.push_back({sf.face, sf.anc_pos, sf.anc_pos});
    b.close_faces(closing);

    std::vector<int> m3_recs = row_readout_recs(b, A, 0, d + 1);

    if (!cxb) {
        b.emit_observable(0, row_readout_recs(b, C, 0, d - 1));  // Z_C channel
    } else {
        // X_C channel: C and A X-chains joined via the gap-row atom at the
        // chain column, then A's chain traded for T's through m2
        std::vector<int> recs = col_readout_recs(b, C, 0, d - 1);
        recs.push_back(b.readout_rec(d, d - 1, 0));
        for (int r : m2_recs) recs.push_back(r);
        b.emit_observable(0, recs);
    }
    if (txb && !cxb) {
        b.emit_observable(1, col_readout_recs(b, T, 0, d + 1));  // X_T channel
    } else if (txb && cxb) {
        b.emit_observable(1, col_readout_recs(b, T, 0, d + 1));
    } else {
        // Z_T channel: corrections from the ZZ outcome and the ancilla readout
        std::vector<int> recs = row_readout_recs(b, T, 0, d + 1);
        for (int r : m1_recs) recs.push_back(r);
        for (int r : m3_recs) recs.push_back(r);
        b.emit_observable(1, recs);
    }

    out.circuit = b.take();
    out.layout = std::move(L);
    out.n_patches = 3;
    out.round_duration_us = out.cz_layers_per_round * opt.timing.t_2q_us +
                            out.oneq_layers_per_round * opt.timing.t_1q_us + opt.timing.t_meas_us;
    return out;
}

GeneratedExperiment gen_interleaved_merge(const MergeOptions& opt) {
    const int d = opt.d, k = opt.k;
    if (opt.pos_a < 0 || opt.pos_a >= k || opt.pos_b < 0 || opt.pos_b >= k)
        throw std::invalid_argument("merge positions out of range");
    bool vertical = opt.basis == 'Z';
    SurfacePatch A = SurfacePatch::make(0, 0, d);
    SurfacePatch B = vertical ? SurfacePatch::make(d + 1, 0, d) : SurfacePatch::make(0, d + 1, d);

    std::vector<Coord> gap;
    for (int t = 0; t < d; t++) gap.push_back(vertical ? Coord{d, t} : Coord{t, d});

    auto seam = merge_seam_faces(d, 0, 0, opt.basis, opt.pos_a, opt.pos_b);

    std::vector<Coord> data = A.data_sites();
    for (auto rc : B.data_sites()) data.push_back(rc);
    for (auto rc : gap) data.push_back(rc);
    std::set<std::pair<int, int>> face_set;
    for (const auto* patch : {&A, &B})
        for (const auto& f : patch->faces) face_set.insert({f.pr, f.pc});
    for (const auto& sf : seam) face_set.insert({sf.face.pr, sf.face.pc});

    int rows = vertical ? 2 * d + 1 : d, cols = vertical ? d : 2 * d + 1;
    InterleavedLayout L = build_fabric(
        k, opt.spacing_um, opt.radii, 0, 0, rows, cols, data,
        std::vector<std::pair<int, int>>(face_set.begin(), face_set.end()));

    // every seam leg must stay within the ancilla-data range
    double G = L.block_pitch_um();
    if (G > opt.radii.ancilla_data_um * 1.02)
        throw std::invalid_argument("infeasible seam: legs exceed the ancilla-data radius");

    FabricBuilder b(L, opt.timing);

    // involved positions prep in the merge basis; uninvolved run |0> memory
    std::vector<FaceInst> faces;
    for (int pos = 0; pos < k; pos++) {
        prep_patch(b, A, pos, pos == opt.pos_a ? opt.state_a : LogicalState::Zero);
        prep_patch(b, B, pos, pos == opt.pos_b ? opt.state_b : LogicalState::Zero);
        for (auto fi : patch_faces(A, pos)) faces.push_back(fi);
        for (auto fi : patch_faces(B, pos)) faces.push_back(fi);
    }
    b.tick(opt.timing.t_1q_us);

    GeneratedExperiment out;
    b.round(faces);
    out.cz_layers_per_round = b.last_round_cz_layers_;
    out.oneq_layers_per_round = b.last_round_1q_layers_;

    // merge rounds: involved positions' boundary faces at the seam are
    // replaced by the (possibly parallelogram) seam faces
    b.prep_css(gap, opt.pos_a, opt.basis);
    if (opt.pos_b != opt.pos_a) b.prep_css(gap, opt.pos_b, opt.basis);
    b.tick(opt.timing.t_1q_us);

    std::vector<FaceInst> merged;
    for (const auto& fi : faces) {
        bool replaced = false;
        for (const auto& sf : seam)
            if (sf.face.pr == fi.face.pr && sf.face.pc == fi.face.pc && fi.anc_pos == sf.anc_pos)
                replaced = true;
        if (!replaced) merged.push_back(fi);
    }
    for (const auto& sf : seam) merged.push_back({sf.face, sf.anc_pos, sf.anc_pos});

    std::vector<int> m_recs;
    for (int r = 0; r < d; r++) {
        b.round(merged);
        if (r == 0)
            for (const auto& sf : seam)
                if (sf.is_new) m_recs.push_back(b.last_rec({sf.face.pr, sf.face.pc, sf.anc_pos}));
    }

    b.begin_final_readout();
    for (int pos = 0; pos < k; pos++) {
        char ba = pos == opt.pos_a ? opt.basis : 'Z';
        char bb = pos == opt.pos_b ? opt.basis : 'Z';
        b.measure_data_css(A.data_sites(), pos, ba);
        b.measure_data_css(B.data_sites(), pos, bb);
    }
    b.measure_data_css(gap, opt.pos_a, opt.basis);
    if (opt.pos_b != opt.pos_a) b.measure_data_css(gap, opt.pos_b, opt.basis);
    b.end_final_readout();
    b.close_faces(merged);

    b.emit_observable(0, m_recs);  // the joint logical measurement outcome

    out.circuit = b.take();
    out.layout = std::move(L);
    out.n_patches = 2 * k;
    out.round_duration_us = out.cz_layers_per_round * opt.timing.t_2q_us +
                            out.oneq_layers_per_round * opt.timing.t_1q_us + opt.timing.t_meas_us;
    return out;
}

}  // namespace iq
