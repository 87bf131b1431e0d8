//! Compiling constructions to netlists.

use super::netlist::{Lit, Netlist, NetlistBuilder};
use crate::constructions::{Construction, ConstructionParams, StepOutput};
use crate::error::Result;

/// Full adder: sum with 2 XOR, carry `ab + c(a + b)` with 2 AND and 1 OR.
fn full_adder(b: &mut NetlistBuilder, x: Lit, y: Lit, z: Lit) -> (Lit, Lit) {
    let p = b.xor(x, y);
    let sum = b.xor(p, z);
    let g = b.and(x, y);
    let q = b.and(z, p);
    (sum, b.or(g, q))
}

/// Majority of the given wires: a carry-save counting tree followed by a
/// comparison of the count against `floor(k/2) + 1`.
pub fn majority_into(b: &mut NetlistBuilder, xs: &[Lit]) -> Lit {
    let k = xs.len();
    let mut columns: Vec<Vec<Lit>> = vec![xs.to_vec()];
    let mut count_bits = Vec::new();
    let mut w = 0;
    while w < columns.len() {
        loop {
            let col = &mut columns[w];
            if col.len() <= 1 {
                break;
            }
            let (sum, carry) = if col.len() >= 3 {
                let (x, y, z) = (col.remove(0), col.remove(0), col.remove(0));
                full_adder(b, x, y, z)
            } else {
                let (x, y) = (col.remove(0), col.remove(0));
                (b.xor(x, y), b.and(x, y))
            };
            columns[w].push(sum);
            if columns.len() == w + 1 {
                columns.push(Vec::new());
            }
            columns[w + 1].push(carry);
        }
        count_bits.push(columns[w].pop().unwrap_or(Lit::Const(false)));
        w += 1;
    }
    let threshold = k / 2 + 1;
    // r tracks [count mod 2^(i+1) >= threshold mod 2^(i+1)]
    let mut r = Lit::Const(true);
    for (i, &c) in count_bits.iter().enumerate() {
        r = if (threshold >> i) & 1 == 1 { b.and(c, r) } else { b.or(c, r) };
    }
    if threshold >> count_bits.len() != 0 {
        return Lit::Const(false);
    }
    r
}

/// One step on wires `(g, h)` with fresh inputs `(a, b, c)`, in the
/// expanded form `G = (c + b) + g + ag + ah`, `H = (c + a) + g + sg + sh`
/// with `s = c + b`: 8 XOR and 4 AND.
fn step_into(bld: &mut NetlistBuilder, g: Lit, h: Lit, a: Lit, b: Lit, c: Lit) -> (Lit, Lit) {
    let ag = bld.and(a, g);
    let ah = bld.and(a, h);
    let f = bld.xor(g, ag);
    let f = bld.xor(f, ah);
    let s = bld.xor(c, b);
    let big_g = bld.xor(s, f);
    let sg = bld.and(s, g);
    let sh = bld.and(s, h);
    let q = bld.xor(g, sg);
    let q = bld.xor(q, sh);
    let r = bld.xor(c, a);
    let big_h = bld.xor(r, q);
    (big_g, big_h)
}

/// Emits the gates for `c` over the given input wires.
pub fn construction_into(b: &mut NetlistBuilder, c: &Construction, xs: &[Lit]) -> Lit {
    debug_assert_eq!(xs.len(), c.n());
    match c {
        Construction::Parity { .. } => b.xor_all(xs),
        Construction::Majority { .. } => majority_into(b, xs),
        Construction::MaioranaMcFarland { psi, inner } => {
            let k = psi.len();
            let (x, y) = xs.split_at(k);
            let terms: Vec<Lit> = (0..k).map(|i| b.and(x[psi.source(i)], y[i])).collect();
            let dot = b.xor_all(&terms);
            let h = construction_into(b, inner, x);
            b.xor(dot, h)
        }
        Construction::F5 => {
            let [x1, x2, z1, z2, z3] = [xs[0], xs[1], xs[2], xs[3], xs[4]];
            let a = b.xor(z1, z2);
            let p = b.xor(z1, z3);
            let q = b.xor(z2, z3);
            let s = b.xor(a, z3);
            let x12 = b.and(x1, x2);
            let t1 = b.and(x1, p);
            let t2 = b.and(x2, q);
            let t3 = b.and(x12, s);
            let out = b.xor(a, t1);
            let out = b.xor(out, t2);
            b.xor(out, t3)
        }
        Construction::GadgetG => {
            let [x1, z1, z2, z3] = [xs[0], xs[1], xs[2], xs[3]];
            let a = b.xor(z1, z2);
            let p = b.xor(z1, z3);
            let t = b.and(x1, p);
            b.xor(a, t)
        }
        Construction::GadgetH => {
            let [x1, z1, z2, z3] = [xs[0], xs[1], xs[2], xs[3]];
            let a = b.xor(z1, z3);
            let t = b.and(x1, z2);
            b.xor(a, t)
        }
        Construction::DirectSum(parts) => {
            let mut offset = 0;
            let mut acc = Lit::Const(false);
            for p in parts {
                let w = p.n();
                let v = construction_into(b, p, &xs[offset..offset + w]);
                acc = b.xor(acc, v);
                offset += w;
            }
            acc
        }
        Construction::Complement(inner) => {
            let v = construction_into(b, inner, xs);
            b.not(v)
        }
        Construction::Concat(g, h) => {
            let n = g.n();
            let gv = construction_into(b, g, &xs[..n]);
            let hv = construction_into(b, h, &xs[..n]);
            b.mux(xs[n], gv, hv)
        }
        Construction::Iter { g, h, t } => {
            let n = g.n();
            let mut gv = construction_into(b, g, &xs[..n]);
            let mut hv = construction_into(b, h, &xs[..n]);
            for r in xs[n..n + 3 * t].chunks_exact(3) {
                (gv, hv) = step_into(b, gv, hv, r[0], r[1], r[2]);
            }
            b.mux(xs[n + 3 * t], gv, hv)
        }
        Construction::Step { g, h, which } => {
            let n = g.n();
            let gv = construction_into(b, g, &xs[..n]);
            let hv = construction_into(b, h, &xs[..n]);
            let (big_g, big_h) = step_into(b, gv, hv, xs[n], xs[n + 1], xs[n + 2]);
            match which {
                StepOutput::G => big_g,
                StepOutput::H => big_h,
            }
        }
    }
}

/// Counting-tree majority circuit on `n` inputs.
pub fn synth_majority(n: usize) -> Result<Netlist> {
    synth_tree(&crate::constructions::families::majority(n)?)
}

/// Netlist of a construction tree.
pub fn synth_tree(c: &Construction) -> Result<Netlist> {
    c.validate()?;
    let mut b = NetlistBuilder::new(c.n());
    let xs = b.inputs();
    let out = construction_into(&mut b, c, &xs);
    b.finish(out)
}

pub fn synth_construction(p: &ConstructionParams) -> Result<Netlist> {
    synth_tree(&p.build()?)
}
