// Points of the Siegel upper half-space, the Heisenberg action, the Cayley
// transforms to and from the unit ball, and ball automorphisms.
use num_complex::Complex64;
use siegel_norms::siegel::{
    cayley_phi, cayley_psi, heis_apply, heis_compose, jac_phi, mobius, rho, BallPoint, HeisenbergElement, SiegelPoint,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let z = SiegelPoint::new(vec![c(0.3, -0.2), c(0.5, 1.4)]);
    let w = SiegelPoint::new(vec![c(-0.1, 0.4), c(-1.0, 0.9)]);
    println!("height(z) = {:.6}, height(w) = {:.6}", z.height(), w.height());
    println!("ρ(z, w) = {:.6}", rho(&z, &w).unwrap());

    let h = HeisenbergElement::new(vec![c(1.0, 2.0)], -0.5);
    let (hz, hw) = (heis_apply(&h, &z).unwrap(), heis_apply(&h, &w).unwrap());
    println!("ρ(hz, hw) = {:.6}  (unchanged)", rho(&hz, &hw).unwrap());
    let hh = heis_compose(&h, &h).unwrap();
    println!("h·h = [{:?}, {}]", hh.zeta.as_slice(), hh.t);

    let xi = BallPoint::new(vec![c(0.2, 0.1), c(-0.3, 0.5)]);
    let p = cayley_phi(&xi).unwrap();
    println!("\nΦ(ξ) = {:.6?}, height {:.6}", p.coords(), p.height());
    println!("Ψ(Φ(ξ)) = {:.6?}", cayley_psi(&p).unwrap().coords());
    println!("J_Φ(ξ) = {:.6}", jac_phi(&xi).unwrap());

    let eta = BallPoint::new(vec![c(0.0, -0.4), c(0.1, 0.2)]);
    let m = mobius(&xi, &eta).unwrap();
    println!("\nφ_ξ(η) = {:.6?}", m.coords());
    println!("φ_ξ(φ_ξ(η)) = {:.6?}", mobius(&xi, &m).unwrap().coords());
    println!("φ_ξ(ξ) = {:.2?}", mobius(&xi, &xi).unwrap().coords());
}
