import os


class Settings(dict):
    """ Run-wide knobs.  Every key has a default; the CLI overrides them per
        run and MF_CACHE_SIZE overrides the operator cache size.
    """

    def __init__(self, init=dict()):
        self['table_cap'] = 2000
        self['moufang_exhaustive'] = 256
        self['triality_exhaustive'] = 10 ** 4
        self['iso_complete'] = 128
        self['iso_timeout'] = 60.0
        self['cache_size'] = int(os.environ.get('MF_CACHE_SIZE', 4096))
        self['dense_operator_cap'] = 1 << 16
        self['seed'] = 0
        self['budget'] = 10 ** 4
        self['jobs'] = os.cpu_count() or 1
        super().__init__(init)

    def __getattr__(self, name):
        try:
            return self[name]
        except KeyError:
            raise AttributeError(name)


settings = Settings()
