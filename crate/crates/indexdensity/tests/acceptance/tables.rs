//! Reference data for the acceptance suite: predicted-density rows of the
//! published tables (20 columns = m from 1 to 20) and the published
//! vanishing census.

// Reference density values (20 columns = m of 1..20).
pub const RANK1_TABLE: [(u32, [&str; 20]); 20] = [
    (2, ["0.5609337", "0.09348895", "0.09972155", "0.07011672", "0.02834191", "0.01662026", "0.01340210", "0.01752918", "0.01108017", "0.00472365", "0.00510365", "0.0124652", "0.00359751", "0.00223368", "0.00503856", "0.00438229", "0.00206270", "0.00184670", "0.00164041", "0.00354274"]),
    (3, ["0.5983293", "0.1121867", "0.06648103", "0.02804669", "0.03023138", "0.04986078", "0.01429557", "0.007011672", "0.007386782", "0.00566838", "0.00544389", "0.0124652", "0.00383735", "0.00268042", "0.00335904", "0.00175292", "0.00220022", "0.00554009", "0.00174977", "0.00141710"]),
    (4, ["0.3739558", "0.1869779", "0.06648103", "0.1402334", "0.01889461", "0.03324052", "0.008934733", "0.03505836", "0.007386782", "0.00944730", "0.00340243", "0.0249304", "0.00239834", "0.00446737", "0.00335904", "0.00876459", "0.00137514", "0.00369339", "0.00109361", "0.00708548"]),
    (5, ["0.5707747", "0.1328527", "0.1014711", "0.03321318", "0.01889461", "0.02361826", "0.01363722", "0.008303295", "0.01127456", "0.0141709", "0.00519319", "0.00590457", "0.00366063", "0.00317418", "0.00335904", "0.00207582", "0.00209889", "0.00262425", "0.00166919", "0.00354274"]),
    (6, ["0.5609337", "0.1495823", "0.09972155", "0.02804669", "0.02834191", "0.01662026", "0.01340210", "0.007011672", "0.01108017", "0.00755784", "0.00510365", "0.0124652", "0.00359751", "0.00357389", "0.00503856", "0.00175292", "0.00206270", "0.00184670", "0.00164041", "0.00141710"]),
    (7, ["0.5654942", "0.1368131", "0.1005323", "0.03420328", "0.02857234", "0.02432233", "0.008934733", "0.008550819", "0.01117025", "0.00691266", "0.00514514", "0.00608058", "0.00362676", "0.00670105", "0.00507953", "0.00213770", "0.00207947", "0.00270248", "0.00165375", "0.00172817"]),
    (8, ["0.3365602", "0.05609337", "0.2991647", "0.04207003", "0.01700515", "0.04986078", "0.008041260", "0.01051751", "0.03324052", "0.00283419", "0.00306219", "0.0373956", "0.00215851", "0.00134021", "0.0151157", "0.00262938", "0.00123762", "0.00554009", "0.000984246", "0.00212564"]),
    (9, ["0.3739558", "0.2991647", "0.06648103", "0.05609337", "0.01889461", "0.03324052", "0.008934733", "0.01402334", "0.007386782", "0.0151156", "0.00340243", "0.0249304", "0.00239834", "0.00714779", "0.00335904", "0.00350584", "0.00137514", "0.00369339", "0.00109361", "0.00283419"]),
    (10, ["0.5609337", "0.1426937", "0.09972155", "0.03321318", "0.02834191", "0.02536776", "0.01340210", "0.008303295", "0.01108017", "0.00472365", "0.00510365", "0.00590457", "0.00359751", "0.00340931", "0.00503856", "0.00207582", "0.00206270", "0.00281864", "0.00164041", "0.00354274"]),
    (11, ["0.5626491", "0.1389469", "0.1000265", "0.03473672", "0.02842859", "0.02470167", "0.01344308", "0.008684180", "0.01111406", "0.00702047", "0.00340243", "0.00617542", "0.00360852", "0.00331979", "0.00505397", "0.00217105", "0.00206901", "0.00274463", "0.00164543", "0.00175512"]),
    (12, ["0.5983293", "0.1121867", "0.06648103", "0.02804669", "0.03023138", "0.04986078", "0.01429557", "0.007011672", "0.007386782", "0.00566838", "0.00544389", "0.0124652", "0.00383735", "0.00268042", "0.00335904", "0.00175292", "0.00220022", "0.00554009", "0.00174977", "0.00141710"]),
    (13, ["0.5621400", "0.1393287", "0.09993601", "0.03483217", "0.02840286", "0.02476955", "0.01343092", "0.008708044", "0.01110400", "0.00703976", "0.00511463", "0.00619239", "0.00239834", "0.00332891", "0.00504940", "0.00217701", "0.00206714", "0.00275217", "0.00164394", "0.00175994"]),
    (14, ["0.5609337", "0.1413735", "0.09972155", "0.03420328", "0.02834191", "0.02513307", "0.01340210", "0.008550819", "0.01108017", "0.00714308", "0.00510365", "0.00608058", "0.00359751", "0.00223368", "0.00503856", "0.00213770", "0.00206270", "0.00279256", "0.00164041", "0.00172817"]),
    (15, ["0.5589655", "0.1417096", "0.1014711", "0.03542739", "0.03023138", "0.02361826", "0.01335507", "0.008856848", "0.01127456", "0.00566838", "0.00508574", "0.00590457", "0.00358489", "0.00338579", "0.00335904", "0.00221421", "0.00205547", "0.00262425", "0.00163465", "0.00141710"]),
    (16, ["0.3739558", "0.1869779", "0.06648103", "0.09348895", "0.01889461", "0.03324052", "0.008934733", "0.07011672", "0.007386782", "0.00944730", "0.00340243", "0.0166203", "0.00239834", "0.00446737", "0.00335904", "0.0175292", "0.00137514", "0.00369339", "0.00109361", "0.00472365"]),
    (17, ["0.5616237", "0.1397160", "0.09984421", "0.03492899", "0.02837678", "0.02483839", "0.01341858", "0.008732248", "0.01109380", "0.00705933", "0.00510993", "0.00620960", "0.00360194", "0.00333816", "0.00504476", "0.00218306", "0.00137514", "0.00275982", "0.00164243", "0.00176483"]),
    (18, ["0.5609337", "0.09348895", "0.09972155", "0.07011672", "0.02834191", "0.01662026", "0.01340210", "0.01752918", "0.01108017", "0.00472365", "0.00510365", "0.0124652", "0.00359751", "0.00223368", "0.00503856", "0.00438229", "0.00206270", "0.00184670", "0.00164041", "0.00354274"]),
    (19, ["0.5614820", "0.1398222", "0.09981903", "0.03495555", "0.02836962", "0.02485728", "0.01341520", "0.008738887", "0.01109100", "0.00706470", "0.00510864", "0.00621432", "0.00360103", "0.00334070", "0.00504349", "0.00218472", "0.00206472", "0.00276192", "0.00109361", "0.00176618"]),
    (20, ["0.5707747", "0.1328527", "0.1014711", "0.03321318", "0.01889461", "0.02361826", "0.01363722", "0.008303295", "0.01127456", "0.0141709", "0.00519319", "0.00590457", "0.00366063", "0.00317418", "0.00335904", "0.00207582", "0.00209889", "0.00262425", "0.00166919", "0.00354274"]),
    (21, ["0.5600216", "0.1409175", "0.1005323", "0.03522937", "0.02829583", "0.02432233", "0.01429557", "0.008807343", "0.01117025", "0.00712004", "0.00509535", "0.00608058", "0.00359166", "0.00268042", "0.00507953", "0.00220184", "0.00205935", "0.00270248", "0.00163774", "0.00178001"]),
];

pub const RANK2_TABLE: [(&str, [&str; 20]); 5] = [
    ("-1,2,3", ["0.820590", "0.082059", "0.0395099", "0.0239339", "0.00822248", "0.0098774", "0.00279248", "0.0029917", "0.0014633", "0.0008222", "0.000678", "0.002880", "0.0004046", "0.0002792", "0.000395897", "0.000373967", "0.000177465", "0.000365832", "0.000126284", "0.000239822"]),
    ("2,3", ["0.697501", "0.205147", "0.0395099", "0.0205147", "0.00698910", "0.0098774", "0.00237361", "0.0059834", "0.0014633", "0.0020556", "0.000576", "0.002469", "0.0003439", "0.0006981", "0.000395897", "0.000747933", "0.000150846", "0.000365832", "0.000107342", "0.000205562"]),
    ("2,-3", ["0.711178", "0.191471", "0.0263399", "0.0205147", "0.00712615", "0.0230474", "0.00242015", "0.0059834", "0.0009755", "0.0019185", "0.000587", "0.002469", "0.0003506", "0.0006515", "0.000263931", "0.000747933", "0.000153803", "0.000853609", "0.000109447", "0.000205562"]),
    ("-2,3", ["0.697501", "0.205147", "0.0395099", "0.0205147", "0.00698910", "0.0098774", "0.00237361", "0.0059834", "0.0014633", "0.0020556", "0.000576", "0.002469", "0.0003439", "0.0006981", "0.000395897", "0.000747933", "0.000150846", "0.000365832", "0.000107342", "0.000205562"]),
    ("-2,-3", ["0.711178", "0.191471", "0.0263399", "0.0205147", "0.00712615", "0.0230474", "0.00242015", "0.0059834", "0.0009755", "0.0019185", "0.000587", "0.002469", "0.0003506", "0.0006515", "0.000263931", "0.000747933", "0.000153803", "0.000853609", "0.000109447", "0.000205562"]),
];

/// Published census of (a, least vanishing m) with a a perfect cube.
pub const PUBLISHED_CENSUS: [(u64, u64); 17] = [
    (27, 2),
    (216, 4),
    (729, 4),
    (1728, 2),
    (3375, 10),
    (9261, 14),
    (13824, 4),
    (19683, 2),
    (27000, 20),
    (35937, 22),
    (46656, 4),
    (59319, 26),
    (74088, 28),
    (110592, 2),
    (132651, 34),
    (185193, 38),
    (216000, 10),
];

/// The Artin constant to 21 decimal digits.
pub const ARTIN_CONSTANT_21: &str = "0.373955813619202288054";
