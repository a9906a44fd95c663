//! Brute-force oracles shared by the integration tests. None of them call the
//! library's own algorithms beyond reading diagrams and structure tables.

#![allow(dead_code)]

use lvk_core::{FiniteBiquandle, GaussDiagram, Role, Sign};

pub fn d(s: &str) -> GaussDiagram {
    s.parse().unwrap()
}

/// `(over_pos, under_pos, sign)` per chord, by direct scan.
pub fn chord_positions(d: &GaussDiagram) -> Vec<(usize, usize, Sign)> {
    let eps = d.endpoints();
    let mut out = Vec::new();
    for (i, e) in eps.iter().enumerate() {
        if e.role != Role::Over {
            continue;
        }
        let j = eps.iter().position(|f| f.label == e.label && f.role == Role::Under).unwrap();
        out.push((i, j, e.sign));
    }
    out
}

/// Odd writhe by checking every pair of chords for an alternating pattern.
pub fn odd_writhe_oracle(d: &GaussDiagram) -> i64 {
    let chords = chord_positions(d);
    let mut total = 0;
    for (i, &(a0, a1, sign)) in chords.iter().enumerate() {
        let (lo, hi) = (a0.min(a1), a0.max(a1));
        let mut linked = 0;
        for (j, &(b0, b1, _)) in chords.iter().enumerate() {
            if i == j {
                continue;
            }
            let x = lo < b0 && b0 < hi;
            let y = lo < b1 && b1 < hi;
            if x ^ y {
                linked += 1;
            }
        }
        if linked % 2 == 1 {
            total += if sign == Sign::Pos { 1 } else { -1 };
        }
    }
    total
}

/// End-coloring counts by enumerating every color assignment on the `2n + 1`
/// semiarcs. Semiarc `k` runs from endpoint `k - 1` to endpoint `k`.
pub fn brute_coloring(d: &GaussDiagram, x: &FiniteBiquandle) -> Vec<Vec<u64>> {
    let m = x.m;
    let arcs = d.endpoints().len() + 1;
    let chords = chord_positions(d);
    let mut out = vec![vec![0u64; m]; m];
    let mut c = vec![0usize; arcs];
    let total = m.pow(arcs as u32);
    for mut code in 0..total {
        for slot in c.iter_mut() {
            *slot = code % m;
            code /= m;
        }
        let ok = chords.iter().all(|&(po, pu, sign)| {
            let (o_in, u_in, o_out, u_out) = (c[po], c[pu], c[po + 1], c[pu + 1]);
            match sign {
                Sign::Pos => u_out == x.up(u_in, o_in) && o_out == x.down(o_in, u_in),
                Sign::Neg => u_in == x.up(u_out, o_out) && o_in == x.down(o_out, u_out),
            }
        });
        if ok {
            out[c[0]][c[arcs - 1]] += 1;
        }
    }
    out
}

/// `(chi, boundary_total, genus)` of the band surface, built from compass
/// ports and traced by joining band sides through disc corners.
///
/// A crossing disc has ports W, S, E, N in counterclockwise order. Over
/// enters W and leaves E. Under enters S and leaves N at a positive
/// crossing, and enters N and leaves S at a negative one.
pub fn surface_oracle(d: &GaussDiagram) -> (i64, usize, i64) {
    #[derive(Clone, Copy)]
    enum End {
        Leaving,
        Entering,
    }
    let n = d.crossings();
    let chords = chord_positions(d);
    // port = (disc, compass index 0..4); disc 0 is the end annulus with 2 ports
    let mut port_of = vec![((0usize, 0usize), (0usize, 0usize)); 2 * n];
    for (k, &(po, pu, sign)) in chords.iter().enumerate() {
        let disc = k + 1;
        port_of[po] = ((disc, 0), (disc, 2));
        port_of[pu] = match sign {
            Sign::Pos => ((disc, 1), (disc, 3)),
            Sign::Neg => ((disc, 3), (disc, 1)),
        };
    }
    let ports = |disc: usize| if disc == 0 { 2 } else { 4 };
    // bands: band j goes from the exit of passage j - 1 to the entry of passage j
    let bands = 2 * n + 1;
    let mut attached: Vec<((usize, usize), usize, End)> = Vec::new();
    for j in 0..bands {
        let from = if j == 0 { (0, 0) } else { port_of[j - 1].1 };
        let to = if j == 2 * n { (0, 1) } else { port_of[j].0 };
        attached.push((from, j, End::Leaving));
        attached.push((to, j, End::Entering));
    }
    // sides: 2 * band + 0 is the left side in travel direction, + 1 the right
    let band_at = |p: (usize, usize)| attached.iter().find(|(q, ..)| *q == p).map(|&(_, b, e)| (b, e)).unwrap();
    let mut parent: Vec<usize> = (0..2 * bands).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for disc in 0..=n {
        let k = ports(disc);
        for i in 0..k {
            let (p, q) = ((disc, i), (disc, (i + 1) % k));
            // corner between p and the next port q counterclockwise
            let (bp, ep) = band_at(p);
            let (bq, eq) = band_at(q);
            // seen from the disc, the counterclockwise-next side is on the left
            let side_p = match ep {
                End::Leaving => 2 * bp,
                End::Entering => 2 * bp + 1,
            };
            let side_q = match eq {
                End::Leaving => 2 * bq + 1,
                End::Entering => 2 * bq,
            };
            let (a, b) = (find(&mut parent, side_p), find(&mut parent, side_q));
            parent[a] = b;
        }
    }
    let circles = (0..2 * bands).filter(|&x| find(&mut parent, x) == x).count() + 1;
    // discs contribute 1 each, the annulus 0, bands -1 each
    let chi = n as i64 - bands as i64;
    let genus = (2 - chi - circles as i64) / 2;
    (chi, circles, genus)
}

/// Random diagrams with up to `max_n` chords, shrinking toward fewer chords.
pub fn arb_diagram(max_n: usize) -> impl proptest::strategy::Strategy<Value = GaussDiagram> {
    use proptest::prelude::*;
    (0..=max_n, any::<u64>()).prop_map(|(n, seed)| lvk_core::fuzz::random_diagram(&mut lvk_core::fuzz::rng(seed), n))
}
