# ui/i18n.py
from __future__ import annotations
from typing import Dict


class I18N:
    _lang = "en"

    _STRINGS: Dict[str, Dict[str, str]] = {
        # ==== Общие ====
        "app.title": {"ru": "frobsplit", "en": "frobsplit", "zh": "frobsplit"},
        "app.description": {
            "ru": "Инварианты расщепления Фробениуса в характеристике p",
            "en": "Frobenius-splitting invariants in characteristic p",
            "zh": "特征 p 下的 Frobenius 分裂不变量",
        },
        "err.usage": {"ru": "ошибка использования: {}", "en": "usage error: {}", "zh": "用法错误：{}"},
        "err.domain": {"ru": "ошибка: {} ({})", "en": "error: {} ({})", "zh": "错误：{}（{}）"},
        "err.need_poly": {
            "ru": "нужен --hypersurface, --ideal или --fedder",
            "en": "one of --hypersurface, --ideal or --fedder is required",
            "zh": "需要 --hypersurface、--ideal 或 --fedder 之一",
        },
        "err.need_center": {"ru": "нужен --center", "en": "--center is required", "zh": "需要 --center"},
        "err.need_div": {"ru": "нужен хотя бы один --div", "en": "at least one --div is required", "zh": "至少需要一个 --div"},
        "err.need_map": {"ru": "нужен --map", "en": "--map is required", "zh": "需要 --map"},
        "err.bad_int_list": {
            "ru": "ожидался список целых через запятую: {}",
            "en": "expected a comma-separated list of integers: {}",
            "zh": "需要以逗号分隔的整数列表：{}",
        },

        # ==== Подписи полей отчёта ====
        "key.fpure": {"ru": "F-чистота", "en": "F-pure", "zh": "F-纯"},
        "key.q": {"ru": "q", "en": "q", "zh": "q"},
        "key.p": {"ru": "p", "en": "p", "zh": "p"},
        "key.e": {"ru": "e", "en": "e", "zh": "e"},
        "key.witness": {"ru": "свидетель", "en": "witness", "zh": "见证单项式"},
        "key.test_poly_digest": {"ru": "хеш тестового многочлена", "en": "test polynomial digest", "zh": "测试多项式摘要"},
        "key.compatible": {"ru": "центр совместим", "en": "center compatible", "zh": "中心相容"},
        "key.compat_ok": {"ru": "разложение точное", "en": "decomposition exact", "zh": "分解精确"},
        "key.center_ok": {"ru": "тест центра", "en": "center test", "zh": "中心检验"},
        "key.h_bar": {"ru": "h̄", "en": "h̄", "zh": "h̄"},
        "key.h": {"ru": "h(t)", "en": "h(t)", "zh": "h(t)"},
        "key.divisor": {"ru": "дивизор", "en": "divisor", "zh": "除子"},
        "key.degree": {"ru": "степень", "en": "degree", "zh": "次数"},
        "key.subfpure": {"ru": "суб-F-чистота (все коэфф. ≤ 1)", "en": "sub-F-pure (all coefficients ≤ 1)",
                         "zh": "次 F-纯（所有系数 ≤ 1）"},
        "key.fibers": {"ru": "слои", "en": "fibers", "zh": "纤维"},
        "key.non_split": {"ru": "нерасщепимые слои", "en": "non-split fibers", "zh": "不分裂的纤维"},
        "key.thresholds": {"ru": "пороги", "en": "thresholds", "zh": "阈值"},
        "key.rational_support": {"ru": "рациональный носитель", "en": "rational support", "zh": "有理支撑"},
        "key.rows": {"ru": "простые", "en": "primes", "zh": "素数"},
        "key.lambda0": {"ru": "λ0", "en": "λ0", "zh": "λ0"},
        "key.nu": {"ru": "ν", "en": "ν", "zh": "ν"},
        "key.lower": {"ru": "нижняя оценка fpt", "en": "fpt lower bound", "zh": "fpt 下界"},
        "key.upper": {"ru": "верхняя оценка fpt", "en": "fpt upper bound", "zh": "fpt 上界"},
        "key.supermultiplicative": {"ru": "сверхмультипликативность", "en": "super-multiplicative",
                                    "zh": "超乘性"},
        "key.legendre": {"ru": "многочлен Хассе (Лежандр)", "en": "Legendre Hasse polynomial", "zh": "Legendre Hasse 多项式"},
        "key.cone_h": {"ru": "h(t) конуса", "en": "cone h(t)", "zh": "锥的 h(t)"},
        "key.radicals_equal": {"ru": "радикалы совпадают", "en": "radicals agree", "zh": "根式一致"},
        "key.scalar": {"ru": "множитель", "en": "scalar", "zh": "比例系数"},
        "key.multiplicities": {"ru": "кратности", "en": "multiplicities", "zh": "重数"},
        "key.hasse_value": {"ru": "инвариант Хассе", "en": "Hasse invariant", "zh": "Hasse 不变量"},
        "key.point_count": {"ru": "#E(F_p)", "en": "#E(F_p)", "zh": "#E(F_p)"},
        "key.ramification": {"ru": "ветвление", "en": "ramification", "zh": "分歧"},
        "key.leftover_digest": {"ru": "хеш остатка", "en": "leftover digest", "zh": "余项摘要"},
        "key.lambda": {"ru": "λ", "en": "λ", "zh": "λ"},
        "key.fedder_digest": {"ru": "хеш многочлена Феддера", "en": "Fedder polynomial digest", "zh": "Fedder 多项式摘要"},
        "key.h_value": {"ru": "h(λ)", "en": "h(λ)", "zh": "h(λ)"},
        "key.pair_fpure": {"ru": "пара F-чиста", "en": "pair F-pure", "zh": "偶对 F-纯"},
        "key.split": {"ru": "расщепим", "en": "split", "zh": "分裂"},
        "key.degenerate": {"ru": "вырожден", "en": "degenerate", "zh": "退化"},
        "key.rational_points": {"ru": "F_p-точки носителя", "en": "F_p-points of support", "zh": "支撑的 F_p 点"},
        "key.lambda0_degenerate": {"ru": "λ0 вырожден", "en": "λ0 degenerate", "zh": "λ0 退化"},
        "key.lambda0_in_support": {"ru": "λ0 в носителе", "en": "λ0 in support", "zh": "λ0 在支撑中"},
        "key.prime": {"ru": "простой", "en": "prime", "zh": "素除子"},
        "key.threshold": {"ru": "порог", "en": "threshold", "zh": "阈值"},
        "key.cone": {"ru": "конус", "en": "cone", "zh": "锥"},
        "key.ratio": {"ru": "ν/q", "en": "ν/q", "zh": "ν/q"},

        # ==== Итоги ====
        "verdict.yes": {"ru": "да", "en": "yes", "zh": "是"},
        "verdict.no": {"ru": "нет", "en": "no", "zh": "否"},
        "verdict.none": {"ru": "-", "en": "-", "zh": "-"},
    }

    @classmethod
    def set_lang(cls, lang: str) -> None:
        if lang not in ("ru", "en", "zh"):
            lang = "en"
        cls._lang = lang

    @classmethod
    def t(cls, key: str) -> str:
        m = cls._STRINGS.get(key, {})
        return m.get(cls._lang, m.get("en", key))

    @classmethod
    def label(cls, field: str) -> str:
        """Report field caption; unknown fields print as-is."""
        key = f"key.{field}"
        return cls.t(key) if key in cls._STRINGS else field


# Удобный псевдоним
def tr(key: str) -> str:
    return I18N.t(key)
