import sympy as sp

phi = sp.Symbol("phi", positive=True)
a, c, h = sp.symbols("a c h", positive=True)
ap = a + h**2
cp = c + 1
k = c / (a + c * ap)

NMAX = 7
s_ser = sp.sin(phi).series(phi, 0, NMAX + 4).removeO()
c_ser = sp.cos(phi).series(phi, 0, NMAX + 4).removeO()
s2_ser = sp.sin(2 * phi).series(phi, 0, NMAX + 4).removeO()

coefA = (k * cp - 2) * c_ser - h * k * s_ser
coefB = (-k * cp * c_ser + h * k * s_ser)
coefC = (-k * cp * c_ser**2 - k * ap * s_ser**2 + h * k * s2_ser + 2)


def pair_residuals(Psi, Theta):
    r1 = sp.expand(sp.diff(Psi, phi) * s_ser - k * cp * Theta - coefA * Psi)
    r2 = sp.expand(sp.diff(Theta, phi) * s_ser - coefB * Theta - coefC * Psi)
    return r1, r2


# re-solve analytic branch quickly
p = sp.symbols(f"p1:{NMAX+1}")
t = sp.symbols(f"t0:{NMAX+1}")
Psi0 = 1 + sum(p[n - 1] * phi**n for n in range(1, NMAX + 1))
Theta0 = sum(t[n] * phi**n for n in range(0, NMAX + 1))
r1, r2 = pair_residuals(Psi0, Theta0)
eqs = []
for r in (r1, r2):
    for n in range(-1, NMAX - 2 + 1):
        cfe = sp.expand(r).coeff(phi, n)
        if cfe != 0:
            eqs.append(cfe)
sol0 = sp.solve(eqs, list(p) + list(t), dict=True)[0]
Psi0 = Psi0.subs(sol0)
Theta0 = Theta0.subs(sol0)
print("analytic done; p1 =", sp.simplify(sol0[p[0]]), " expect kh/3 =", sp.simplify(k * h / 3))

# singular branch
Clog = sp.Symbol("Clog")
q = sp.symbols("q1 q3 q4 q5 q6 q7")
r = sp.symbols(f"r0:{NMAX+1}")
u = phi**-2 * (1 + q[0] * phi + sum(q[i] * phi**(i + 2) for i in range(1, len(q))))
v = phi**-2 * sum(r[n] * phi**n for n in range(0, NMAX + 1))
Psim2 = Clog * Psi0 * sp.log(phi) + u
Thetam2 = Clog * Theta0 * sp.log(phi) + v
r1, r2 = pair_residuals(Psim2, Thetam2)

L = sp.Symbol("L")
unknowns = [Clog] + list(q) + list(r)
for lohi in [(-3, 1), (-3, 2), (-3, 3)]:
    eqs = []
    for nm, rr in (("a", r1), ("b", r2)):
        rrL = sp.expand(rr.subs(sp.log(phi), L))
        parts = sp.collect(rrL, L, evaluate=False)
        for Lpow, expr in parts.items():
            ex = sp.expand(expr)
            for n in range(lohi[0], lohi[1] + 1):
                cfe = ex.coeff(phi, n)
                if cfe != 0:
                    eqs.append(cfe)
    M, b = sp.linear_eq_to_matrix(eqs, unknowns)
    sol = sp.linsolve((M, b), unknowns)
    print(f"orders {lohi}: {len(eqs)} eqs -> ", "EMPTY" if sol == sp.EmptySet else "ok")
    if sol == sp.EmptySet:
        # bisect: which single order breaks?
        for n in range(lohi[0], lohi[1] + 1):
            eqs_n = []
            for rr in (r1, r2):
                rrL = sp.expand(rr.subs(sp.log(phi), L))
                parts = sp.collect(rrL, L, evaluate=False)
                for Lpow, expr in parts.items():
                    cfe = sp.expand(expr).coeff(phi, n)
                    if cfe != 0:
                        eqs_n.append((Lpow, cfe))
            print(f"  order {n}:")
            for Lpow, e in eqs_n:
                print("   L^", Lpow, ": ", sp.simplify(e.subs({a: sp.Rational(7, 10), c: sp.Rational(3, 5), h: sp.Rational(3, 2)})))
        break
