//! Reidemeister moves on PD diagrams.
//!
//! Moves keep every existing arc label they can: a split arc keeps its label
//! on the piece that starts at its old tail, and new arcs get labels above the
//! current maximum. New crossings are appended; R3 rewrites its three crossings
//! in place.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{ArcId, Crossing, Dart, DiagramError, LinkDiagram, Side, Sign, Slot};

/// Which side of the strand the R1 loop lies on, looking along the orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KinkSide {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    R1Positive,
    R1Negative,
    R2,
    R3,
    R2Inverse,
    R1Inverse,
}

impl std::fmt::Display for MoveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MoveKind::R1Positive => "R1+",
            MoveKind::R1Negative => "R1-",
            MoveKind::R2 => "R2",
            MoveKind::R3 => "R3",
            MoveKind::R2Inverse => "R2-inverse",
            MoveKind::R1Inverse => "R1-inverse",
        };
        f.write_str(s)
    }
}

/// A move together with the place it applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum MoveSpec {
    /// Add a kink on `arc` (a crossing arc or a crossingless circle).
    R1 { sign: Sign, arc: ArcId, side: KinkSide },
    /// Remove the kink at `crossing`.
    R1Inverse { crossing: usize },
    /// Push a finger of `over` across `under` through a face both border.
    /// Without a face index the first common face is used.
    R2 {
        over: ArcId,
        under: ArcId,
        face: Option<usize>,
    },
    /// Remove the bigon between two crossings.
    R2Inverse { crossings: (usize, usize) },
    /// Slide a strand across the opposite crossing of a triangular face.
    R3 { face: usize },
}

impl MoveSpec {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSpec::R1 {
                sign: Sign::Positive,
                ..
            } => MoveKind::R1Positive,
            MoveSpec::R1 { .. } => MoveKind::R1Negative,
            MoveSpec::R1Inverse { .. } => MoveKind::R1Inverse,
            MoveSpec::R2 { .. } => MoveKind::R2,
            MoveSpec::R2Inverse { .. } => MoveKind::R2Inverse,
            MoveSpec::R3 { .. } => MoveKind::R3,
        }
    }

    /// Parse a script token such as `R1+ arc=3 side=left`, `R2 over=1 under=4`,
    /// `R3 face=2`, `R1-inverse crossing=0` or `R2-inverse crossings=3,4`.
    pub fn parse(text: &str) -> Result<MoveSpec, DiagramError> {
        let bad = |reason: &str| DiagramError::PatternMismatch {
            kind: text.trim().to_string(),
            reason: reason.to_string(),
        };
        let mut words = text.split_whitespace();
        let head = words.next().ok_or_else(|| bad("empty move"))?;
        let mut args = BTreeMap::new();
        for w in words {
            let (k, v) = w.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            args.insert(k.to_string(), v.to_string());
        }
        let num = |k: &str| -> Result<u64, DiagramError> {
            args.get(k)
                .ok_or_else(|| bad(&format!("missing {k}")))?
                .parse()
                .map_err(|_| bad(&format!("{k} is not a number")))
        };
        match head {
            "R1+" | "R1-" => {
                let side = match args.get("side").map(String::as_str) {
                    None | Some("right") => KinkSide::Right,
                    Some("left") => KinkSide::Left,
                    Some(_) => return Err(bad("side must be left or right")),
                };
                let sign = if head == "R1+" {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                Ok(MoveSpec::R1 {
                    sign,
                    arc: num("arc")? as ArcId,
                    side,
                })
            }
            "R1-inverse" => Ok(MoveSpec::R1Inverse {
                crossing: num("crossing")? as usize,
            }),
            "R2" => Ok(MoveSpec::R2 {
                over: num("over")? as ArcId,
                under: num("under")? as ArcId,
                face: if args.contains_key("face") {
                    Some(num("face")? as usize)
                } else {
                    None
                },
            }),
            "R2-inverse" => {
                let v = args.get("crossings").ok_or_else(|| bad("missing crossings"))?;
                let (a, b) = v.split_once(',').ok_or_else(|| bad("crossings=a,b"))?;
                let a = a.parse().map_err(|_| bad("crossing is not a number"))?;
                let b = b.parse().map_err(|_| bad("crossing is not a number"))?;
                Ok(MoveSpec::R2Inverse { crossings: (a, b) })
            }
            "R3" => Ok(MoveSpec::R3 {
                face: num("face")? as usize,
            }),
            _ => Err(bad("unknown move")),
        }
    }
}

/// Where each crossing of the result came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTrace {
    pub crossing_origin: Vec<Option<usize>>,
}

fn mismatch(kind: MoveKind, reason: impl Into<String>) -> DiagramError {
    DiagramError::PatternMismatch {
        kind: kind.to_string(),
        reason: reason.into(),
    }
}

impl LinkDiagram {
    pub fn apply_move(&self, mv: &MoveSpec) -> Result<LinkDiagram, DiagramError> {
        self.apply_move_traced(mv).map(|(d, _)| d)
    }

    pub fn apply_move_traced(&self, mv: &MoveSpec) -> Result<(LinkDiagram, MoveTrace), DiagramError> {
        match *mv {
            MoveSpec::R1 { sign, arc, side } => self.r1(sign, arc, side),
            MoveSpec::R1Inverse { crossing } => self.r1_inverse(crossing),
            MoveSpec::R2 { over, under, face } => self.r2(over, under, face),
            MoveSpec::R2Inverse { crossings } => self.r2_inverse(crossings.0, crossings.1),
            MoveSpec::R3 { face } => self.r3(face),
        }
    }

    fn identity_trace(&self, extra: usize) -> MoveTrace {
        let mut origin: Vec<Option<usize>> = (0..self.crossing_count()).map(Some).collect();
        origin.extend(std::iter::repeat_n(None, extra));
        MoveTrace {
            crossing_origin: origin,
        }
    }

    fn r1(&self, sign: Sign, arc: ArcId, side: KinkSide) -> Result<(LinkDiagram, MoveTrace), DiagramError> {
        let kind = if sign == Sign::Positive {
            MoveKind::R1Positive
        } else {
            MoveKind::R1Negative
        };
        if !self.has_arc(arc) {
            return Err(mismatch(kind, format!("arc {arc} does not exist")));
        }
        let mut crossings = self.crossings.clone();
        let mut unknots = self.unknots.clone();
        let loop_arc = self.max_arc() + 1;
        let (a, b) = if let Some(pos) = unknots.iter().position(|&u| u == arc) {
            unknots.remove(pos);
            (arc, arc)
        } else {
            let out = loop_arc + 1;
            let head = self.ends[&arc].head;
            crossings[head.crossing].slots[head.pos as usize] = out;
            (arc, out)
        };
        let l = loop_arc;
        let slots = match (sign, side) {
            (Sign::Negative, KinkSide::Right) => [a, l, l, b],
            (Sign::Positive, KinkSide::Left) => [a, b, l, l],
            (Sign::Negative, KinkSide::Left) => [l, a, b, l],
            (Sign::Positive, KinkSide::Right) => [l, l, b, a],
        };
        crossings.push(Crossing::new(slots, sign));
        let d = LinkDiagram::new(crossings, unknots)?;
        Ok((d, self.identity_trace(1)))
    }

    /// Crossings carrying a removable kink.
    pub fn kink_sites(&self) -> Vec<usize> {
        (0..self.crossing_count())
            .filter(|&c| self.kink_loop(c).is_some())
            .collect()
    }

    fn kink_loop(&self, c: usize) -> Option<u8> {
        let s = &self.crossings[c].slots;
        (0..4u8).find(|&p| s[p as usize] == s[((p + 1) % 4) as usize])
    }

    fn r1_inverse(&self, c: usize) -> Result<(LinkDiagram, MoveTrace), DiagramError> {
        self.crossing(c)?;
        let p = self
            .kink_loop(c)
            .ok_or_else(|| mismatch(MoveKind::R1Inverse, format!("crossing {c} is not a kink")))?;
        let s = &self.crossings[c].slots;
        let l = s[p as usize];
        let (x, y) = (s[((p + 2) % 4) as usize], s[((p + 3) % 4) as usize]);
        self.remove_crossings(&[c], &[vec![x, y]], &[l])
    }

    /// Drop `removed` crossings, fusing each group of arcs into one arc.
    /// Groups that no longer touch a crossing become crossingless circles;
    /// `discarded` arcs vanish.
    fn remove_crossings(
        &self,
        removed: &[usize],
        groups: &[Vec<ArcId>],
        discarded: &[ArcId],
    ) -> Result<(LinkDiagram, MoveTrace), DiagramError> {
        let mut parent: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        fn find(p: &mut BTreeMap<ArcId, ArcId>, x: ArcId) -> ArcId {
            let mut r = x;
            while let Some(&q) = p.get(&r) {
                if q == r {
                    break;
                }
                r = q;
            }
            p.insert(x, r);
            r
        }
        for g in groups {
            for w in g.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    parent.insert(hi, lo);
                    parent.insert(lo, lo);
                }
            }
        }
        let removed: BTreeSet<usize> = removed.iter().copied().collect();
        let mut crossings = Vec::new();
        let mut origin = Vec::new();
        let mut touched = BTreeSet::new();
        for (i, x) in self.crossings.iter().enumerate() {
            if removed.contains(&i) {
                continue;
            }
            let mut slots = x.slots;
            for s in slots.iter_mut() {
                *s = find(&mut parent, *s);
                touched.insert(*s);
            }
            crossings.push(Crossing::new(slots, x.sign));
            origin.push(Some(i));
        }
        let mut unknots = self.unknots.clone();
        let mut classes = BTreeSet::new();
        for &c in &removed {
            for &a in &self.crossings[c].slots {
                if discarded.contains(&a) {
                    continue;
                }
                classes.insert(find(&mut parent, a));
            }
        }
        for r in classes {
            if !touched.contains(&r) {
                unknots.push(r);
            }
        }
        unknots.sort_unstable();
        let d = LinkDiagram::new(crossings, unknots)?;
        Ok((
            d,
            MoveTrace {
                crossing_origin: origin,
            },
        ))
    }

    /// (over, under, face) triples for which R2 applies.
    pub fn r2_sites(&self) -> Vec<(ArcId, ArcId, usize)> {
        let mut out = Vec::new();
        for (fi, f) in self.faces.iter().enumerate() {
            let arcs: BTreeSet<ArcId> = f
                .darts
                .iter()
                .map(|d| d.arc)
                .filter(|a| self.ends.contains_key(a))
                .collect();
            for &e in &arcs {
                for &g in &arcs {
                    if e != g {
                        out.push((e, g, fi));
                    }
                }
            }
        }
        out
    }

    fn r2(&self, over: ArcId, under: ArcId, face: Option<usize>) -> Result<(LinkDiagram, MoveTrace), DiagramError> {
        let k = MoveKind::R2;
        if over == under {
            return Err(mismatch(k, "the two arcs must differ"));
        }
        for a in [over, under] {
            if !self.ends.contains_key(&a) {
                return Err(mismatch(k, format!("arc {a} is not an arc between crossings")));
            }
        }
        let dart_in = |fi: usize, arc: ArcId| -> Option<Dart> {
            self.faces[fi].darts.iter().copied().find(|d| d.arc == arc)
        };
        let fi = match face {
            Some(fi) => {
                if fi >= self.faces.len() {
                    return Err(mismatch(k, format!("face {fi} does not exist")));
                }
                fi
            }
            None => (0..self.faces.len())
                .find(|&fi| dart_in(fi, over).is_some() && dart_in(fi, under).is_some())
                .ok_or_else(|| mismatch(k, format!("arcs {over} and {under} share no face")))?,
        };
        let (de, df) = match (dart_in(fi, over), dart_in(fi, under)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(mismatch(k, format!("arcs {over} and {under} do not both border face {fi}"))),
        };

        // Local model: `over` runs along y=0, `under` along y=1, the face
        // between them. Traversal keeps the face on its right, so `over` is
        // traversed right-to-left and `under` left-to-right.
        let ee = self.ends[&over];
        let fe = self.ends[&under];
        let e_ltr = de.side == Side::Left;
        let f_ltr = df.side == Side::Right;
        let dart_slot = |d: Dart, ends: super::ArcEnds| if d.side == Side::Right { ends.tail } else { ends.head };
        let e_right_slot = dart_slot(de, ee);
        let e_left_slot = if e_right_slot == ee.tail { ee.head } else { ee.tail };
        let f_left_slot = dart_slot(df, fe);
        let f_right_slot = if f_left_slot == fe.tail { fe.head } else { fe.tail };

        let mut next = self.max_arc() + 1;
        let mut fresh = || {
            next += 1;
            next - 1
        };
        let e_mid = fresh();
        let (e_left, e_right) = if e_ltr { (over, fresh()) } else { (fresh(), over) };
        let f_mid = fresh();
        let (f_left, f_right) = if f_ltr { (under, fresh()) } else { (fresh(), under) };

        let mut crossings = self.crossings.clone();
        let put = |xs: &mut Vec<Crossing>, s: Slot, a: ArcId| xs[s.crossing].slots[s.pos as usize] = a;
        put(&mut crossings, e_left_slot, e_left);
        put(&mut crossings, e_right_slot, e_right);
        put(&mut crossings, f_left_slot, f_left);
        put(&mut crossings, f_right_slot, f_right);

        // directions counterclockwise: S, E, N, W
        let x_dirs = [e_left, f_mid, e_mid, f_left];
        let y_dirs = [e_right, f_right, e_mid, f_mid];
        // under strand `under` enters from W (index 3) when left-to-right, else from E (1)
        let under_in = if f_ltr { 3 } else { 1 };
        let x_over_in = if e_ltr { 0 } else { 2 };
        let y_over_in = if e_ltr { 2 } else { 0 };
        let build = |dirs: [ArcId; 4], over_in: usize| {
            let slots = [
                dirs[under_in],
                dirs[(under_in + 1) % 4],
                dirs[(under_in + 2) % 4],
                dirs[(under_in + 3) % 4],
            ];
            let sign = if (over_in + 4 - under_in) % 4 == 3 {
                Sign::Positive
            } else {
                Sign::Negative
            };
            Crossing::new(slots, sign)
        };
        crossings.push(build(x_dirs, x_over_in));
        crossings.push(build(y_dirs, y_over_in));
        let d = LinkDiagram::new(crossings, self.unknots.clone())?;
        Ok((d, self.identity_trace(2)))
    }

    /// Pairs of crossings bounding a bigon on which one strand is over twice.
    pub fn bigon_sites(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for f in &self.faces {
            if let Some(pair) = self.removable_bigon(f) {
                out.push(pair);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn removable_bigon(&self, f: &super::Face) -> Option<(usize, usize)> {
        if f.corners.len() != 2 {
            return None;
        }
        let (k0, k1) = (f.corners[0], f.corners[1]);
        if k0.crossing == k1.crossing {
            return None;
        }
        // the arc leaving k0 at slot+1 arrives at k1 at k1.pos
        let leave = k0.rotated(1);
        if self.other_end(leave) != k1 {
            return None;
        }
        if leave.pos % 2 != k1.pos % 2 {
            return None;
        }
        Some((k0.crossing.min(k1.crossing), k0.crossing.max(k1.crossing)))
    }

    fn r2_inverse(&self, a: usize, b: usize) -> Result<(LinkDiagram, MoveTrace), DiagramError> {
        self.crossing(a)?;
        self.crossing(b)?;
        let want = (a.min(b), a.max(b));
        let face = self
            .faces
            .iter()
            .find(|f| self.removable_bigon(f) == Some(want))
            .ok_or_else(|| {
                mismatch(
                    MoveKind::R2Inverse,
                    format!("no removable bigon between crossings {a} and {b}"),
                )
            })?;
        let mut groups = Vec::new();
        for k in 0..2 {
            let corner = face.corners[k];
            let leave = corner.rotated(1);
            let arrive = self.other_end(leave);
            groups.push(vec![
                self.arc_at(leave.rotated(2)),
                self.arc_at(leave),
                self.arc_at(arrive.rotated(2)),
            ]);
        }
        self.remove_crossings(&[a, b], &groups, &[])
    }

    /// Triangular faces where R3 applies.
    pub fn r3_sites(&self) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&fi| self.r3_geometry(fi).is_ok())
            .collect()
    }

    /// Returns the corners (C0, P3, P2) of the triangle in traversal order,
    /// where the strand through P2 and P3 is over (or under) at both.
    fn r3_geometry(&self, fi: usize) -> Result<[Slot; 3], DiagramError> {
        let k = MoveKind::R3;
        let f = self
            .faces
            .get(fi)
            .ok_or_else(|| mismatch(k, format!("face {fi} does not exist")))?;
        if f.corners.len() != 3 {
            return Err(mismatch(k, format!("face {fi} is not a triangle")));
        }
        let cs: BTreeSet<usize> = f.corners.iter().map(|c| c.crossing).collect();
        if cs.len() != 3 {
            return Err(mismatch(k, format!("face {fi} touches a crossing twice")));
        }
        for i in 0..3 {
            let from = f.corners[i];
            let to = f.corners[(i + 1) % 3];
            let leave = from.rotated(1);
            // edge from corner i to corner i+1 is over at both ends or under at both
            if leave.pos % 2 == to.pos % 2 {
                let c0 = f.corners[(i + 2) % 3];
                return Ok([c0, from, to]);
            }
        }
        Err(mismatch(k, format!("face {fi} is an alternating triangle")))
    }

    fn r3(&self, fi: usize) -> Result<(LinkDiagram, MoveTrace), DiagramError> {
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
        enum Dir {
            E,
            NE,
            NW,
            W,
            SW,
            SE,
        }
        use Dir::*;
        let [k_c0, k_p3, k_p2] = self.r3_geometry(fi)?;
        // counterclockwise directions starting at each corner's arrival slot
        let layout: [(Slot, [Dir; 4]); 3] = [
            (k_c0, [SW, SE, NE, NW]),
            (k_p3, [NW, W, SE, E]),
            (k_p2, [E, NE, W, SW]),
        ];
        let label = |which: usize, dir: Dir| -> ArcId {
            let (corner, dirs) = layout[which];
            let off = dirs.iter().position(|&d| d == dir).expect("direction present") as u8;
            self.arc_at(corner.rotated(off))
        };
        let inner02 = label(0, SW);
        let inner03 = label(0, SE);
        let inner23 = label(2, E);
        let new_labels: [Vec<(Dir, ArcId)>; 3] = [
            vec![(NE, inner02), (NW, inner03), (SW, label(2, SW)), (SE, label(1, SE))],
            vec![(W, label(2, W)), (NW, label(0, NW)), (E, inner23), (SE, inner03)],
            vec![(E, label(1, E)), (NE, label(0, NE)), (W, inner23), (SW, inner02)],
        ];
        let mut crossings = self.crossings.clone();
        for (which, (corner, dirs)) in layout.iter().enumerate() {
            let mut slots = [0; 4];
            for off in 0..4u8 {
                let dir = dirs[off as usize];
                let arc = new_labels[which]
                    .iter()
                    .find(|(d, _)| *d == dir)
                    .expect("every direction relabeled")
                    .1;
                slots[corner.rotated(off).pos as usize] = arc;
            }
            crossings[corner.crossing].slots = slots;
        }
        let d = LinkDiagram::new(crossings, self.unknots.clone())?;
        Ok((d, self.identity_trace(0)))
    }

    /// Every R1 variant on every arc.
    pub fn r1_sites(&self) -> Vec<MoveSpec> {
        let mut out = Vec::new();
        for arc in self.arcs() {
            for sign in [Sign::Positive, Sign::Negative] {
                for side in [KinkSide::Left, KinkSide::Right] {
                    out.push(MoveSpec::R1 { sign, arc, side });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn trefoil() -> LinkDiagram {
        parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").unwrap()
    }

    #[test]
    fn r1_on_unknot_gives_positive_kink() {
        let u = LinkDiagram::unknot();
        for side in [KinkSide::Left, KinkSide::Right] {
            let k = u
                .apply_move(&MoveSpec::R1 {
                    sign: Sign::Positive,
                    arc: 1,
                    side,
                })
                .unwrap();
            assert_eq!(k.crossing_count(), 1);
            assert_eq!(k.n_minus(), 0);
            assert_eq!(k.components().len(), 1);
        }
    }

    #[test]
    fn every_r1_variant_validates_and_inverts() {
        let d = trefoil();
        for mv in d.r1_sites() {
            let k = d.apply_move(&mv).unwrap();
            assert_eq!(k.crossing_count(), 4);
            let MoveSpec::R1 { sign, .. } = mv else { unreachable!() };
            assert_eq!(k.crossing_sign(3).unwrap(), sign);
            let back = k.apply_move(&MoveSpec::R1Inverse { crossing: 3 }).unwrap();
            assert!(back.is_isomorphic(&d), "{mv:?}");
        }
    }

    #[test]
    fn r2_round_trip_on_every_site() {
        let d = trefoil();
        let sites = d.r2_sites();
        assert!(!sites.is_empty());
        for (over, under, face) in sites {
            let mv = MoveSpec::R2 {
                over,
                under,
                face: Some(face),
            };
            let e = d.apply_move(&mv).unwrap();
            assert_eq!(e.crossing_count(), 5);
            assert_eq!(e.components().len(), 1);
            assert_eq!(e.writhe(), d.writhe());
            for x in &e.crossings()[3..] {
                for (p, a) in x.slots.iter().enumerate() {
                    if *a == over {
                        assert_eq!(p % 2, 1);
                    }
                    if *a == under {
                        assert_eq!(p % 2, 0);
                    }
                }
            }
            let back = e
                .apply_move(&MoveSpec::R2Inverse { crossings: (3, 4) })
                .unwrap();
            assert!(back.is_isomorphic(&d));
        }
    }

    #[test]
    fn r3_is_an_involution() {
        // a braid-like triangle produced by R2 on the trefoil
        let d = trefoil();
        let mut checked = 0;
        for (over, under, face) in d.r2_sites() {
            let e = d
                .apply_move(&MoveSpec::R2 {
                    over,
                    under,
                    face: Some(face),
                })
                .unwrap();
            for fi in e.r3_sites() {
                let f = e.apply_move(&MoveSpec::R3 { face: fi }).unwrap();
                assert_eq!(f.crossing_count(), e.crossing_count());
                let sites = f.r3_sites();
                let mut restored = false;
                for gi in sites {
                    let g = f.apply_move(&MoveSpec::R3 { face: gi }).unwrap();
                    if g.is_isomorphic(&e) {
                        restored = true;
                    }
                }
                assert!(restored);
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn lone_kink_removes_to_unknot() {
        let k = parse_pd("PD[X(1,1,2,2)]").unwrap();
        let u = k.apply_move(&MoveSpec::R1Inverse { crossing: 0 }).unwrap();
        assert!(u.is_isomorphic(&LinkDiagram::unknot()));
    }

    #[test]
    fn r3_on_unknot_is_a_pattern_error() {
        let u = LinkDiagram::unknot();
        let err = u.apply_move(&MoveSpec::R3 { face: 0 }).unwrap_err();
        assert!(matches!(err, DiagramError::PatternMismatch { .. }));
    }

    #[test]
    fn alternating_triangles_rejected() {
        let d = trefoil();
        assert!(d.r3_sites().is_empty());
    }

    #[test]
    fn script_parsing() {
        assert_eq!(
            MoveSpec::parse("R1+ arc=3 side=left").unwrap(),
            MoveSpec::R1 {
                sign: Sign::Positive,
                arc: 3,
                side: KinkSide::Left
            }
        );
        assert_eq!(
            MoveSpec::parse("R2-inverse crossings=3,4").unwrap(),
            MoveSpec::R2Inverse { crossings: (3, 4) }
        );
        assert!(MoveSpec::parse("R7").is_err());
    }
}
