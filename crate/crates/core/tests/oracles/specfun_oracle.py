"""Reference values for the special-function tests (mpmath, 50 digits).

E(a, t) and the transient constant are evaluated here through the Gamma
closed form K(a, s) below, which is independent of the binomial-series and
hypergeometric route used by the library:

    K(a, s) = sqrt(pi) G(1 - a/2) G((1+s)/2) G((a-s)/2)
              / ( G((1+a)/2) G(1 - s/2) G((1+s-a)/2) )

E(a, t) = K(a, t), transient(a, t) = K(a, -t), K(a, 0) = pi cot(pi a / 2).
The term-by-term definition is also evaluated directly for cross-checking.
"""
import mpmath as mp

mp.mp.dps = 50


def K(a, s):
    a, s = mp.mpf(a), mp.mpf(s)
    return (mp.sqrt(mp.pi) * mp.gamma(1 - a / 2) * mp.gamma((1 + s) / 2) * mp.gamma((a - s) / 2)
            * mp.rgamma((1 + a) / 2) * mp.rgamma(1 - s / 2) * mp.rgamma((1 + s - a) / 2))


def even_series(a, p):
    # sum_{i>=1} C(p,2i) 2/(2i-a) via the exact integral identity
    # termwise on [0, 1/10], quadrature on [1/10, 1]
    a, p = mp.mpf(a), mp.mpf(p)
    u = mp.mpf(1) / 10
    head = mp.nsum(lambda i: 2 * mp.binomial(p, 2 * i) * u ** (2 * i - a) / (2 * i - a), [1, mp.inf])
    f = lambda t: ((1 + t) ** p + (1 - t) ** p - 2) * t ** (-a - 1)
    return head + mp.quad(f, [u, mp.mpf(1) / 2, 1])


def e_direct(a, t):
    a, t = mp.mpf(a), mp.mpf(t)
    s = even_series(a, t)
    f1 = mp.hyp2f1(-t, a - t, 1 + a - t, -1)
    f2 = mp.hyp2f1(-t, a - t, 1 + a - t, 1)
    return a / t * s - 2 / t + a * (f1 + f2) / (t * (a - t))


def t_direct(a, t):
    a, t = mp.mpf(a), mp.mpf(t)
    s = even_series(a, -t)
    f1 = mp.hyp2f1(t, a + t, 1 + a + t, -1)
    f2 = mp.hyp2f1(t, a + t, 1 + a + t, 1)
    return -a / t * s + 2 / t - a * (f1 + f2) / (t * (a + t))


if __name__ == "__main__":
    for a, t in [(1.5, 0.5), (1.8, 1.4), (1.2, 0.3), (0.7, 0.3), (1.5, 0.2), (1.5, 0.4), (1.5, 0.8), (1.9, 1.7)]:
        print(f"E({a},{t}) = {mp.nstr(K(a, t), 20)}   direct {mp.nstr(e_direct(a, t), 20)}")
    for a, t in [(0.5, 0.25), (1.5, 0.5), (1.2, 0.7), (0.3, 0.1)]:
        print(f"T({a},{t}) = {mp.nstr(K(a, -t), 20)}   direct {mp.nstr(t_direct(a, t), 20)}")
    for a in [1.1, 1.3, 1.5, 1.7, 1.9]:
        d = K(a, mp.mpf('1e-4')) - mp.pi * mp.cot(mp.pi * a / 2)
        print(f"E({a},1e-4) - pi cot = {mp.nstr(d, 6)}")
    print("2F1(1,0.3,1.3,-3) =", mp.nstr(mp.hyp2f1(1, 0.3, 1.3, -3), 20))
    print("2F1(-0.4,1.1,2.1,-1) =", mp.nstr(mp.hyp2f1(-0.4, 1.1, 2.1, -1), 20))
    print("2F1(0.3,1.7,2.2,0.8) =", mp.nstr(mp.hyp2f1(0.3, 1.7, 2.2, 0.8), 20))
    print("2F1(1.5,0.6,0.4,-0.35) =", mp.nstr(mp.hyp2f1(1.5, 0.6, 0.4, -0.35), 20))
